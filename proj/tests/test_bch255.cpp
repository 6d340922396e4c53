#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pcfec/bch255.hpp"

using namespace pcfec;

namespace {

using Word = std::array<std::uint8_t, kBchN>;

// Independent oracle: remainder of dividend(x) by g(x) via schoolbook long
// division over GF(2). Does not share code with the LFSR encoder.
std::vector<std::uint8_t> poly_mod(std::vector<std::uint8_t> dividend,
                                   std::uint32_t g, int gdeg) {
  for (int i = int(dividend.size()) - 1; i >= gdeg; --i) {
    if (!dividend[std::size_t(i)]) continue;
    for (int j = 0; j <= gdeg; ++j)
      dividend[std::size_t(i - gdeg + j)] ^= std::uint8_t((g >> j) & 1u);
  }
  dividend.resize(std::size_t(gdeg));
  return dividend;
}

std::vector<std::uint8_t> random_info(std::mt19937_64& rng) {
  std::vector<std::uint8_t> info(kBchK);
  for (auto& b : info) b = std::uint8_t(rng() & 1u);
  return info;
}

}  // namespace

TEST_SUITE("bch255") {

TEST_CASE("generator is the known degree-16 polynomial and divides x^255 + 1") {
  // Frozen from the minimal polynomials of alpha and alpha^3 under 0x11D:
  // m1 = 0x11D, m3 = 0x177, product 0x16F63.
  CHECK(bch_generator() == 0x16F63u);

  std::vector<std::uint8_t> xn1(kBchN + 1, 0);
  xn1[0] = 1;
  xn1[kBchN] = 1;
  auto rem = poly_mod(xn1, bch_generator(), 16);
  CHECK(std::all_of(rem.begin(), rem.end(), [](std::uint8_t b) { return b == 0; }));
}

TEST_CASE("all-zero info encodes to the all-zero codeword") {
  std::vector<std::uint8_t> info(kBchK, 0);
  auto cw = bch_encode(info);
  CHECK(std::all_of(cw.begin(), cw.end(), [](std::uint8_t b) { return b == 0; }));
}

TEST_CASE("single-one info reproduces the long-division parity") {
  // info = e_0 sits at position 16, so the parity is x^16 mod g = low bits
  // of g. Frozen value 0x6F63, cross-checked against the division oracle.
  std::vector<std::uint8_t> info(kBchK, 0);
  info[0] = 1;
  auto cw = bch_encode(info);

  std::uint32_t parity = 0;
  for (int i = 0; i < 16; ++i) parity |= std::uint32_t(cw[std::size_t(i)]) << i;
  CHECK(parity == 0x6F63u);

  std::vector<std::uint8_t> shifted(17, 0);
  shifted[16] = 1;
  auto rem = poly_mod(shifted, bch_generator(), 16);
  for (int i = 0; i < 16; ++i) CHECK(cw[std::size_t(i)] == rem[std::size_t(i)]);
}

TEST_CASE("encoded words are systematic and divisible by the generator") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    auto info = random_info(rng);
    auto cw = bch_encode(info);
    for (int j = 0; j < kBchK; ++j)
      CHECK(cw[std::size_t(16 + j)] == info[std::size_t(j)]);
    auto rem = poly_mod(std::vector<std::uint8_t>(cw.begin(), cw.end()),
                        bch_generator(), 16);
    CHECK(std::all_of(rem.begin(), rem.end(), [](std::uint8_t b) { return b == 0; }));
    CHECK(bch_syndromes(cw).all_zero());
  }
}

TEST_CASE("syndromes of a flipped codeword match the flip weights") {
  std::mt19937_64 rng(102);
  auto info = random_info(rng);
  auto cw = bch_encode(info);

  for (int j : {0, 1, 16, 100, 254}) {
    Word r = cw;
    r[std::size_t(j)] ^= 1;
    auto s = bch_syndromes(r);
    CHECK(s.s1 == alpha_pow(unsigned(j)));
    CHECK(s.s3 == alpha_pow(unsigned(3 * j)));
  }
  // Two flips add elementwise.
  Word r = cw;
  r[20] ^= 1;
  r[200] ^= 1;
  auto s = bch_syndromes(r);
  CHECK(s.s1 == alpha_pow(20) + alpha_pow(200));
  CHECK(s.s3 == alpha_pow(60) + alpha_pow(600));
}

TEST_CASE("syndromes are linear: codeword contribution cancels") {
  std::mt19937_64 rng(103);
  auto cw = bch_encode(random_info(rng));
  Word e{};
  for (int i = 0; i < 7; ++i) e[rng() % kBchN] ^= 1;
  Word sum;
  for (int i = 0; i < kBchN; ++i)
    sum[std::size_t(i)] = std::uint8_t(cw[std::size_t(i)] ^ e[std::size_t(i)]);
  auto sa = bch_syndromes(sum);
  auto sb = bch_syndromes(e);
  CHECK(sa.s1 == sb.s1);
  CHECK(sa.s3 == sb.s3);
}

TEST_CASE("clean codewords decode to NoError") {
  std::mt19937_64 rng(104);
  auto cw = bch_encode(random_info(rng));
  CHECK(bch_decode(cw).kind == BchOutcome::Kind::NoError);
}

TEST_CASE("every single flip is located, exhaustively") {
  std::mt19937_64 rng(105);
  auto cw = bch_encode(random_info(rng));
  for (int j = 0; j < kBchN; ++j) {
    Word r = cw;
    r[std::size_t(j)] ^= 1;
    auto out = bch_decode(r);
    REQUIRE(out.kind == BchOutcome::Kind::OneError);
    CHECK(out.pos[0] == j);
  }
}

TEST_CASE("random double flips are located, 10^4 pairs") {
  std::mt19937_64 rng(106);
  auto cw = bch_encode(random_info(rng));
  for (int trial = 0; trial < 10000; ++trial) {
    int a = int(rng() % kBchN), b = int(rng() % kBchN);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    Word r = cw;
    r[std::size_t(a)] ^= 1;
    r[std::size_t(b)] ^= 1;
    auto out = bch_decode(r);
    REQUIRE(out.kind == BchOutcome::Kind::TwoErrors);
    CHECK(out.pos[0] == a);
    CHECK(out.pos[1] == b);
    CHECK(out.pos[0] < out.pos[1]);
  }
}

TEST_CASE("weight-3 patterns never yield a weight-3 proposal") {
  // Bounded-distance behavior: the outcome is Failure or a wrong proposal of
  // weight <= 2, and a proposal never lands outside [0, 254].
  std::mt19937_64 rng(107);
  auto cw = bch_encode(random_info(rng));
  int failures = 0, miscorrections = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::set<int> pos;
    while (pos.size() < 3) pos.insert(int(rng() % kBchN));
    Word r = cw;
    for (int p : pos) r[std::size_t(p)] ^= 1;
    auto out = bch_decode(r);
    if (out.kind == BchOutcome::Kind::Failure) {
      ++failures;
    } else {
      ++miscorrections;
      REQUIRE(out.count() <= 2);
      for (int i = 0; i < out.count(); ++i) {
        CHECK(out.pos[std::size_t(i)] >= 0);
        CHECK(out.pos[std::size_t(i)] < kBchN);
      }
    }
  }
  CHECK(failures + miscorrections == 20000);
  CHECK(failures > 0);
  // t+1 errors on a t=2 BCH code do miscorrect sometimes; that is what the
  // extension parity exists to catch.
  CHECK(miscorrections > 0);
}

TEST_CASE("wrong input lengths are rejected") {
  std::vector<std::uint8_t> short_info(10, 0);
  CHECK_THROWS_AS(bch_encode(short_info), std::invalid_argument);
  std::vector<std::uint8_t> short_word(100, 0);
  CHECK_THROWS_AS(bch_syndromes(short_word), std::invalid_argument);
}

}  // TEST_SUITE
