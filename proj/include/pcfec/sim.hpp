#pragma once

#include <cstdint>

#include "pcfec/channel.hpp"
#include "pcfec/product.hpp"

namespace pcfec {

struct SimConfig {
  ChannelConfig channel;
  DecoderConfig decoder;
  int shorten = kDefaultShorten;
  std::uint64_t master_seed = 1;
  std::uint64_t min_frames = 10000;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 10000000;
};

struct TrialResult {
  std::uint32_t pre_fec_bit_errors = 0;
  std::uint32_t post_fec_bit_errors = 0;
  bool frame_error = false;     // decoded info differs from the sent info
  bool decoder_success = false; // what the failure registers claimed
  bool pp_applied = false;
  bool pp_iteration_run = false;
};

struct SimStats {
  std::uint64_t frames = 0;
  std::uint64_t pre_fec_bit_errors = 0;
  std::uint64_t post_fec_bit_errors = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t pp_frames = 0;
  int n = 0;
  int k = 0;

  double ber() const {
    return frames ? double(post_fec_bit_errors) / (double(frames) * k * k) : 0.0;
  }
  double fer() const { return frames ? double(frame_errors) / double(frames) : 0.0; }
  double measured_p() const {
    return frames ? double(pre_fec_bit_errors) / (double(frames) * n * n) : 0.0;
  }
  double pp_rate() const { return frames ? double(pp_frames) / double(frames) : 0.0; }

  void add(const TrialResult& t) {
    ++frames;
    pre_fec_bit_errors += t.pre_fec_bit_errors;
    post_fec_bit_errors += t.post_fec_bit_errors;
    frame_errors += t.frame_error ? 1 : 0;
    pp_frames += t.pp_applied ? 1 : 0;
  }
};

// Stream seed for one trial, a pure function of (master_seed, index) so that
// results never depend on scheduling or worker count.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

class Simulator {
 public:
  explicit Simulator(SimConfig cfg);

  const SimConfig& config() const { return cfg_; }
  const ProductCode& code() const { return code_; }

  // Draw a random information block, encode, transmit, decode, compare.
  TrialResult run_trial(std::uint64_t index) const;

  // Accumulate trials 0, 1, 2, ... in index order until the stopping rule
  // fires: (frames >= min_frames and frame_errors >= min_frame_errors) or
  // frames >= max_frames. Workers only parallelize trial evaluation; the
  // fold order and therefore the result are worker-count independent.
  SimStats run(unsigned workers = 1) const;

 private:
  SimConfig cfg_;
  ProductCode code_;
};

}  // namespace pcfec
