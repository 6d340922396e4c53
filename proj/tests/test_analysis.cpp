#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "pcfec/analysis.hpp"
#include "pcfec/product.hpp"

using namespace pcfec;

namespace {

// Independent tail oracle: continued-fraction erfc (Lentz-style, evaluated
// bottom-up), sharing nothing with the library's erfc-based route.
double erfc_cf(double x) {
  double t = 0.0;
  for (int n = 300; n >= 1; --n) t = (0.5 * n) / (x + t);
  return std::exp(-x * x) / ((x + t) * std::sqrt(M_PI));
}

double q_oracle(double x) { return 0.5 * erfc_cf(x / std::sqrt(2.0)); }

std::vector<int> distinct_indices(int count, int n, std::mt19937_64& rng) {
  std::set<int> s;
  while (int(s.size()) < count) s.insert(int(rng() % n));
  return {s.begin(), s.end()};
}

ProductMatrix with_grid(const ProductMatrix& cw, const std::vector<int>& rows,
                        const std::vector<int>& cols,
                        const std::set<std::pair<int, int>>& holes = {}) {
  ProductMatrix m = cw;
  for (int r : rows)
    for (int c : cols)
      if (!holes.count({r, c})) m.at(r, c) ^= 1;
  return m;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("qinv inverts the Gaussian tail against the continued-fraction oracle") {
  for (double b : {1e-3, 1e-9, 1e-15}) {
    double x = qinv(b);
    CHECK(std::abs(q_oracle(x) - b) / b < 1e-4);
  }
}

TEST_CASE("qinv spot values") {
  CHECK(qinv(1e-15) == doctest::Approx(7.941345).epsilon(1e-4));
  CHECK(qinv(0.4999) < 1e-3);      // tends to zero at the domain edge
  CHECK(qinv(1e-18) == doctest::Approx(8.757290).epsilon(1e-4));
  CHECK_THROWS_AS(qinv(0.0), std::invalid_argument);
  CHECK_THROWS_AS(qinv(0.5), std::invalid_argument);
}

TEST_CASE("net coding gain reproduces the four reference operating points") {
  CHECK(ncg_db(7e-3, 1e-9) == doctest::Approx(7.7507).epsilon(0.0005));
  CHECK(ncg_db(5e-3, 1e-13) == doctest::Approx(9.1061).epsilon(0.0005));
  CHECK(ncg_db(4e-3, 1e-15) == doctest::Approx(9.5260).epsilon(0.0005));
  CHECK(ncg_db(2.7e-3, 1e-18) == doctest::Approx(9.9596).epsilon(0.0005));
}

TEST_CASE("ncg is monotone in both arguments") {
  CHECK(ncg_db(4e-3, 1e-15) < ncg_db(3e-3, 1e-15));
  CHECK(ncg_db(4e-3, 1e-15) < ncg_db(4e-3, 1e-16));
  CHECK_THROWS_AS(ncg_db(1e-9, 1e-3), std::invalid_argument);
}

TEST_CASE("rate term shifts the gain by 10*log10(rate)") {
  double base = ncg_db(4e-3, 1e-15);
  double adj = ncg_db(4e-3, 1e-15, true);
  CHECK(adj - base == doctest::Approx(10.0 * std::log10(kProductRate)).epsilon(1e-9));
}

TEST_CASE("floor estimate combinatorics and frozen calibration values") {
  auto nopp = estimate_floor(4e-3, false);
  CHECK(nopp.pattern_weight == 9);
  CHECK(nopp.multiplicity == 1216865ull * 1216865ull);  // C(195,3)^2
  CHECK(nopp.ber_floor == doctest::Approx(9.19e-14).epsilon(0.01));
  CHECK(nopp.ber_floor == doctest::Approx(nopp.fer_floor * 9 / 38025.0).epsilon(1e-12));

  auto pp = estimate_floor(4e-3, true);
  CHECK(pp.pattern_weight == 12);
  CHECK(pp.multiplicity == 58409520ull * 58409520ull * 24ull);  // C(195,4)^2 * 4!
  // Calibration targets: within one order of magnitude of 1e-15 and 1e-18.
  CHECK(pp.ber_floor > 1e-16);
  CHECK(pp.ber_floor < 1e-14);
  auto pp2 = estimate_floor(2.7e-3, true);
  CHECK(pp2.ber_floor > 1e-19);
  CHECK(pp2.ber_floor < 1e-17);
}

TEST_CASE("floor estimate falls monotonically to zero with p") {
  double prev = 1.0;
  for (double p : {1e-2, 5e-3, 1e-3, 1e-4, 1e-5}) {
    auto est = estimate_floor(p, true);
    CHECK(est.fer_floor < prev);
    CHECK(est.fer_floor >= 0.0);
    prev = est.fer_floor;
  }
  CHECK(prev < 1e-40);
  CHECK_THROWS_AS(estimate_floor(0.0, true), std::invalid_argument);
  CHECK_THROWS_AS(estimate_floor(0.6, true), std::invalid_argument);
}

TEST_CASE("cycle model matches the 193-cycle reference decomposition") {
  LatencyParams def;
  auto b = cycle_count(def);
  CHECK(b.loading_bulk == 105);
  CHECK(b.residual == 7);
  CHECK(b.standard_feed == 45);
  CHECK(b.pipeline_flush == 36);
  CHECK(b.total() == 193);

  // Attribution of the published budget: 111 cycles of loading overlapped
  // with the first half-iteration, 3 x 21 standard half-iterations, 18 for
  // the post-processing iteration, 1 end-of-decoding cycle.
  long loading_first = b.loading_bulk + def.pipeline_stages;
  long standard = (2 * def.iterations - 1) * (15 + def.pipeline_stages);
  long pp_iter = 2 * (3 + def.pipeline_stages);
  long end = 1;
  CHECK(loading_first == 111);
  CHECK(standard == 63);
  CHECK(pp_iter == 18);
  CHECK(loading_first + standard + pp_iter + end == b.total());
}

TEST_CASE("throughput at the reference operating point") {
  LatencyParams def;
  CHECK(throughput_bits_per_cycle(def) == 164);
  CHECK(throughput_gbps(def, 609.0) == doctest::Approx(99.977).epsilon(0.001));
  CHECK(throughput_gbps(def, 609.0) >= 99.9);
  // (2 + 2L) * np at L = 2 is 36.
  CHECK(cycle_count(def).pipeline_flush == (2 + 2 * def.iterations) * def.pipeline_stages);
}

TEST_CASE("cycle model rejects invalid parameters") {
  LatencyParams bad;
  bad.component_decoders = 0;
  CHECK_THROWS_AS(cycle_count(bad), std::invalid_argument);
}

// The two combinatorial claims behind estimate_floor, checked against the
// live decoder instead of trusted.

TEST_CASE("3x3 grids stall the plain decoder and weight-8 subpatterns do not") {
  ProductCode pc;
  std::mt19937_64 rng(401);
  std::vector<std::uint8_t> info(std::size_t(pc.k()) * std::size_t(pc.k()));
  for (auto& b : info) b = std::uint8_t(rng() & 1u);
  auto cw = pc.encode(info);

  DecoderConfig off;
  off.post_processing = false;
  for (int trial = 0; trial < 25; ++trial) {
    auto rows = distinct_indices(3, 195, rng);
    auto cols = distinct_indices(3, 195, rng);
    auto full = with_grid(cw, rows, cols);
    CHECK_FALSE(pc.decode(full, off).success);

    // Dropping any one cell leaves a correctable weight-8 pattern.
    for (int r : rows)
      for (int c : cols) {
        auto sub = with_grid(cw, rows, cols, {{r, c}});
        auto rep = pc.decode(sub, off);
        CHECK(rep.success);
        CHECK(rep.matrix == cw);
      }
  }
}

TEST_CASE("4x4 grids minus a permutation defeat post-processing; 3x3 do not") {
  ProductCode pc;
  std::mt19937_64 rng(402);
  std::vector<std::uint8_t> info(std::size_t(pc.k()) * std::size_t(pc.k()));
  for (auto& b : info) b = std::uint8_t(rng() & 1u);
  auto cw = pc.encode(info);

  std::array<int, 4> perm{0, 1, 2, 3};
  for (int trial = 0; trial < 25; ++trial) {
    auto rows = distinct_indices(4, 195, rng);
    auto cols = distinct_indices(4, 195, rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::set<std::pair<int, int>> holes;
    for (int i = 0; i < 4; ++i) holes.insert({rows[std::size_t(i)], cols[std::size_t(perm[std::size_t(i)])]});
    auto m = with_grid(cw, rows, cols, holes);
    for (Schedule s : {Schedule::Reference, Schedule::Hardware}) {
      DecoderConfig cfg;
      cfg.schedule = s;
      CHECK_FALSE(pc.decode(m, cfg).success);
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto rows = distinct_indices(3, 195, rng);
    auto cols = distinct_indices(3, 195, rng);
    auto m = with_grid(cw, rows, cols);
    for (Schedule s : {Schedule::Reference, Schedule::Hardware}) {
      DecoderConfig cfg;
      cfg.schedule = s;
      CHECK(pc.decode(m, cfg).success);
    }
  }
}

}  // TEST_SUITE
