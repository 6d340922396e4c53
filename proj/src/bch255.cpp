#include "pcfec/bch255.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pcfec {
namespace {

// Minimal polynomial of alpha^e: product of (x + alpha^j) over the cyclotomic
// coset of e. Coefficients land in GF(2).
std::vector<GfElem> minimal_poly(int e) {
  std::vector<int> coset;
  int c = e;
  while (std::find(coset.begin(), coset.end(), c) == coset.end()) {
    coset.push_back(c);
    c = (2 * c) % kGfOrder;
  }
  std::vector<GfElem> poly{GfElem(1)};
  for (int j : coset) {
    GfElem root = alpha_pow(unsigned(j));
    std::vector<GfElem> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] + poly[i] * root;
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<std::uint8_t> to_gf2(const std::vector<GfElem>& poly) {
  std::vector<std::uint8_t> bits;
  for (GfElem co : poly) {
    if (co.value() > 1)
      throw std::logic_error("minimal polynomial has coefficients outside GF(2)");
    bits.push_back(co.value());
  }
  return bits;
}

std::uint32_t compute_generator() {
  // m1 and m3 are distinct irreducibles, so the lcm is the plain product.
  const auto a = to_gf2(minimal_poly(1));
  const auto b = to_gf2(minimal_poly(3));
  std::vector<std::uint8_t> g(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g[i + j] ^= a[i] & b[j];

  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < g.size(); ++i) mask |= std::uint32_t(g[i]) << i;
  if (g.size() != kBchParityBits + 1 || g.back() != 1)
    throw std::logic_error("BCH generator degree is not 16");
  return mask;
}

}  // namespace

std::uint32_t bch_generator() {
  static const std::uint32_t g = compute_generator();
  return g;
}

std::array<std::uint8_t, kBchN> bch_encode(std::span<const std::uint8_t> info) {
  if (info.size() != kBchK)
    throw std::invalid_argument("bch_encode: info length must be 239");
  const std::uint32_t glow = bch_generator() & 0xFFFF;

  // LFSR division of x^16 * I(x) by g(x), info processed from the top down.
  std::uint32_t reg = 0;
  for (int j = kBchK - 1; j >= 0; --j) {
    std::uint32_t fb = (info[std::size_t(j)] & 1u) ^ ((reg >> 15) & 1u);
    reg = (reg << 1) & 0xFFFF;
    if (fb) reg ^= glow;
  }

  std::array<std::uint8_t, kBchN> out{};
  for (int i = 0; i < kBchParityBits; ++i)
    out[std::size_t(i)] = std::uint8_t((reg >> i) & 1u);
  for (int j = 0; j < kBchK; ++j)
    out[std::size_t(kBchParityBits + j)] = std::uint8_t(info[std::size_t(j)] & 1u);
  return out;
}

SyndromePair bch_syndromes(std::span<const std::uint8_t> r) {
  if (r.size() != kBchN)
    throw std::invalid_argument("bch_syndromes: word length must be 255");
  GfElem s1, s3;
  for (int i = 0; i < kBchN; ++i) {
    if (r[std::size_t(i)] & 1u) {
      s1 = s1 + alpha_pow(unsigned(i));
      s3 = s3 + alpha_pow(unsigned(3 * i));
    }
  }
  return {s1, s3};
}

BchOutcome bch_decode_syndromes(SyndromePair s) {
  BchOutcome out;
  const GfElem s1_cubed = gf_cube(s.s1);
  const GfElem key = s1_cubed + s.s3;

  if (s.s1.is_zero()) {
    if (s.s3.is_zero()) {
      out.kind = BchOutcome::Kind::NoError;
    } else {
      // S1 = 0 with S3 != 0 means more than two errors.
      out.kind = BchOutcome::Kind::Failure;
    }
    return out;
  }
  if (key.is_zero()) {
    out.kind = BchOutcome::Kind::OneError;
    out.pos[0] = std::int16_t(gf_log(s.s1));
    return out;
  }
  // Two or more errors: roots of x^2 + x + (S1^3 + S3)/S1^3 locate them.
  auto roots = solve_quadratic(key / s1_cubed);
  if (!roots) {
    out.kind = BchOutcome::Kind::Failure;
    return out;
  }
  int p1 = gf_log(s.s1 * roots->first);
  int p2 = gf_log(s.s1 * roots->second);
  if (p1 > p2) std::swap(p1, p2);
  out.kind = BchOutcome::Kind::TwoErrors;
  out.pos[0] = std::int16_t(p1);
  out.pos[1] = std::int16_t(p2);
  return out;
}

BchOutcome bch_decode(std::span<const std::uint8_t> r) {
  return bch_decode_syndromes(bch_syndromes(r));
}

}  // namespace pcfec
