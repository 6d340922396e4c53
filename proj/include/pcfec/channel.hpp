#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pcfec {

struct ChannelConfig {
  enum class Kind : std::uint8_t { Bsc, AwgnPam4 };
  Kind kind = Kind::Bsc;
  double p = 0.01;          // BSC crossover probability
  double noise_std = 0.05;  // AWGN standard deviation per symbol
};

// Flip each bit independently with probability p, in place. Returns the
// number of flips. Sampling walks geometric gaps between flips, which is
// distribution-identical to a per-bit Bernoulli draw.
std::size_t bsc_transmit(std::span<std::uint8_t> bits, double p, std::mt19937_64& rng);

// Gray-coded 4-PAM over AWGN with hard detection, in place; bits.size() must
// be even. Bit pairs map 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3, scaled to
// unit average symbol energy; thresholds sit halfway between levels. Returns
// the number of bits that changed.
std::size_t pam4_chain(std::span<std::uint8_t> bits, double noise_std,
                       std::mt19937_64& rng);

// Hard-decision bit error rate of the Gray 4-PAM mapping, adjacent-level
// approximation (3/4) Q(1/(sqrt(5) sigma)).
double pam4_gray_ber(double noise_std);

// Noise level at which pam4_gray_ber hits the target, by bisection.
double pam4_noise_std_for_ber(double target_ber);

}  // namespace pcfec
