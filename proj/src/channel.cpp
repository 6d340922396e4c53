#include "pcfec/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "pcfec/analysis.hpp"

namespace pcfec {
namespace {

constexpr double kPamScale = 0.4472135954999579;  // 1/sqrt(5), unit symbol energy

// Levels indexed by detector bin, lowest to highest.
constexpr double kLevel[4] = {-3 * kPamScale, -kPamScale, kPamScale, 3 * kPamScale};
// Gray labels: bin -> (b0 << 1) | b1.
constexpr std::uint8_t kBinBits[4] = {0b00, 0b01, 0b11, 0b10};
// (b0 << 1) | b1 -> detector bin of the transmitted level.
constexpr int kPairBin[4] = {0, 1, 3, 2};

}  // namespace

std::size_t bsc_transmit(std::span<std::uint8_t> bits, double p, std::mt19937_64& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bsc_transmit: p outside [0, 1]");
  if (p == 0.0 || bits.empty()) return 0;
  if (p >= 1.0) {
    for (auto& b : bits) b ^= 1;
    return bits.size();
  }
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double log_keep = std::log1p(-p);
  std::size_t flips = 0, i = 0;
  while (i < bits.size()) {
    double u = uni(rng);
    if (u <= 0.0) break;  // measure-zero draw, treat as no further flips
    double gap = std::floor(std::log(u) / log_keep);
    if (gap >= double(bits.size() - i)) break;
    i += std::size_t(gap);
    bits[i] ^= 1;
    ++flips;
    ++i;
  }
  return flips;
}

std::size_t pam4_chain(std::span<std::uint8_t> bits, double noise_std,
                       std::mt19937_64& rng) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("pam4_chain: bit count must be even");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("pam4_chain: bad noise_std");

  std::normal_distribution<double> noise(0.0, noise_std);
  std::size_t flipped = 0;
  for (std::size_t s = 0; s < bits.size(); s += 2) {
    const std::uint8_t b0 = bits[s] & 1u, b1 = bits[s + 1] & 1u;
    double r = kLevel[kPairBin[(b0 << 1) | b1]];
    if (noise_std > 0.0) r += noise(rng);
    int bin = r < 0.0 ? (r < -2 * kPamScale ? 0 : 1) : (r < 2 * kPamScale ? 2 : 3);
    const std::uint8_t out = kBinBits[bin];
    const std::uint8_t n0 = (out >> 1) & 1u, n1 = out & 1u;
    flipped += std::size_t(n0 != b0) + std::size_t(n1 != b1);
    bits[s] = n0;
    bits[s + 1] = n1;
  }
  return flipped;
}

double pam4_gray_ber(double noise_std) {
  if (!(noise_std > 0.0)) return 0.0;
  return 0.75 * gaussian_q(kPamScale / noise_std);
}

double pam4_noise_std_for_ber(double target_ber) {
  if (!(target_ber > 0.0) || !(target_ber < 0.375))
    throw std::invalid_argument("pam4_noise_std_for_ber: target outside (0, 0.375)");
  double lo = 1e-4, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (pam4_gray_ber(mid) < target_ber)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pcfec
