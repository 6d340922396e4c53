#pragma once

#include <cstdint>

namespace pcfec {

// Standard Gaussian tail Q(x) and its inverse. The inverse is found by
// bisection against the erfc-based tail, good to well past 1e-18.
double gaussian_q(double x);
double qinv(double tail_prob);  // tail_prob in (0, 0.5)

inline constexpr double kProductRate = (178.0 * 178.0) / (195.0 * 195.0);

// Net coding gain in dB between the uncoded operating point at output BER
// ber_out and the coded one at input error probability p_in, as the ratio of
// the two Q factors. The conventional rate adjustment 10*log10(rate) is off
// by default; the bound tables this code targets do not include it.
double ncg_db(double p_in, double ber_out, bool include_rate_term = false,
              double code_rate = kProductRate);

// Union-bound contribution of the minimal stall patterns.
//
// Without post-processing the minimal stall is the full (t+1)x(t+1) error
// grid: weight 9, C(n,3)^2 placements. With post-processing any pattern
// confined to at most 3 rows and 3 columns is flipped away, so the minimal
// survivor has 4 failed rows and columns with 3 errors each: a 4x4 grid
// minus a permutation, weight 12, C(n,4)^2 * 4! placements. Both shapes are
// checked against the live decoder in the tests rather than trusted.
struct FloorEstimate {
  double p = 0;
  bool pp = false;
  double fer_floor = 0;
  double ber_floor = 0;
  int pattern_weight = 0;
  std::uint64_t multiplicity = 0;
};

FloorEstimate estimate_floor(double p, bool pp, int n = 195);

// Clock-cycle model of the register-based product decoder.
struct LatencyParams {
  int component_decoders = 13;  // P_c
  int loading_lanes = 2;        // P_l
  int pipeline_stages = 6;      // n_p
  int iterations = 2;           // L
};

// The four terms of the cycle count, in formula order: the loading bulk that
// overlaps the first half-iteration, the residual loading/post-processing
// and end-of-decoding cycles, the line feeds of the remaining standard
// half-iterations, and the pipeline flushes.
struct CycleBreakdown {
  long loading_bulk = 0;
  long residual = 0;
  long standard_feed = 0;
  long pipeline_flush = 0;
  long total() const { return loading_bulk + residual + standard_feed + pipeline_flush; }
};

CycleBreakdown cycle_count(const LatencyParams& params);

// Worst-case information bits per clock cycle, 178^2 over the cycle count.
int throughput_bits_per_cycle(const LatencyParams& params);

// Information throughput at a clock frequency, from the unrounded bit rate.
double throughput_gbps(const LatencyParams& params, double clock_mhz);

}  // namespace pcfec
