#include "pcfec/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace pcfec {
namespace {

constexpr int kMatrixLines = 195;
constexpr int kInfoBits = 178 * 178;
constexpr double kSqrt2 = 1.4142135623730951;

std::uint64_t binomial(int n, int r) {
  std::uint64_t v = 1;
  for (int i = 1; i <= r; ++i) v = v * std::uint64_t(n - r + i) / std::uint64_t(i);
  return v;
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double qinv(double tail_prob) {
  if (!(tail_prob > 0.0) || !(tail_prob < 0.5))
    throw std::invalid_argument("qinv: argument must be in (0, 0.5)");
  double lo = 0.0, hi = 45.0;  // Q(45) underflows double, low enough for any input
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (gaussian_q(mid) > tail_prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double ncg_db(double p_in, double ber_out, bool include_rate_term, double code_rate) {
  if (!(ber_out > 0.0) || !(ber_out < p_in) || !(p_in < 0.5))
    throw std::invalid_argument("ncg_db: need 0 < ber_out < p_in < 0.5");
  double gain = 20.0 * std::log10(qinv(ber_out) / qinv(p_in));
  if (include_rate_term) gain += 10.0 * std::log10(code_rate);
  return gain;
}

FloorEstimate estimate_floor(double p, bool pp, int n) {
  if (!(p > 0.0) || !(p < 0.5))
    throw std::invalid_argument("estimate_floor: p must be in (0, 0.5)");
  if (n < 5 || n > 256) throw std::invalid_argument("estimate_floor: bad code length");

  FloorEstimate est;
  est.p = p;
  est.pp = pp;
  if (pp) {
    est.pattern_weight = 12;
    est.multiplicity = binomial(n, 4) * binomial(n, 4) * 24;
  } else {
    est.pattern_weight = 9;
    est.multiplicity = binomial(n, 3) * binomial(n, 3);
  }
  // Union bound over pattern placements; errors elsewhere are the decoder's
  // problem, not the pattern's, so no (1-p) factor appears.
  double fer = double(est.multiplicity) * std::pow(p, est.pattern_weight);
  est.fer_floor = std::min(fer, 1.0);
  est.ber_floor = est.fer_floor * double(est.pattern_weight) / (double(n) * double(n));
  return est;
}

CycleBreakdown cycle_count(const LatencyParams& params) {
  const long pc = params.component_decoders;
  const long pl = params.loading_lanes;
  const long np = params.pipeline_stages;
  const long L = params.iterations;
  if (pc < 1 || pl < 1 || np < 0 || L < 1)
    throw std::invalid_argument("cycle_count: invalid parameters");

  CycleBreakdown b;
  b.loading_bulk = (pc / pl + std::min(pc - pl * (pc / pl), pl)) * (kMatrixLines / pc);
  b.residual = 202 - pc * (kMatrixLines / pc);
  b.standard_feed = (2 * L - 1) * ((kMatrixLines + pc - 1) / pc);
  b.pipeline_flush = (2 + 2 * L) * np;
  return b;
}

int throughput_bits_per_cycle(const LatencyParams& params) {
  return int(kInfoBits / cycle_count(params).total());
}

double throughput_gbps(const LatencyParams& params, double clock_mhz) {
  if (!(clock_mhz > 0)) throw std::invalid_argument("throughput_gbps: bad clock");
  return double(kInfoBits) * clock_mhz * 1e6 / double(cycle_count(params).total()) / 1e9;
}

}  // namespace pcfec
