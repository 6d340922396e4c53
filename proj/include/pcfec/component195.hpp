#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pcfec/bch255.hpp"

namespace pcfec {

// Default shortening depth; (256-61, 239-61) = (195, 178).
inline constexpr int kDefaultShorten = 61;

struct ComponentOutcome {
  enum class Status : std::uint8_t { NoErrors, Corrected, Failure };
  Status status = Status::NoErrors;
  int flip_count = 0;
  // Error positions within [0, n-1], ascending; the extension parity bit
  // (position n-1) can be the last entry. At most 2 land in the BCH part.
  std::array<std::int16_t, 3> flips{-1, -1, -1};
};

// Extended, shortened BCH component code (n, k) = (256-l, 239-l) with t = 2.
// Word layout: positions 0..15 BCH parity, 16..n-2 information, n-1 the
// extension parity bit; every codeword has even overall parity. The l
// shortened positions are the highest BCH indices (254 down to n-1), so a
// proposed error location of n-1 or above in the BCH part means the true
// error count exceeded t and the decode fails.
class ComponentCode {
 public:
  explicit ComponentCode(int shorten = kDefaultShorten);

  int shorten() const { return shorten_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int parity_index() const { return n_ - 1; }

  // Systematic encode; info.size() must be k, out.size() must be n.
  void encode(std::span<const std::uint8_t> info, std::span<std::uint8_t> out) const;
  std::vector<std::uint8_t> encode(std::span<const std::uint8_t> info) const;

  // Algorithm: BCH-decode the first n-1 bits (with the shortened zeros
  // implied), then reconcile the proposed flip count d with the overall
  // parity defect d_e; d + d_e <= t corrects, d + d_e = t + 1 fails.
  ComponentOutcome decode(std::span<const std::uint8_t> word) const;

  // Unique codeword completion given positions 0..k-1: fills the 16 BCH
  // positions k..n-2 and the extension bit. The column direction of the
  // product code is systematic on the leading positions, which is this.
  void complete_from_prefix(std::span<std::uint8_t> word) const;

  // Zero syndromes and even parity.
  bool is_codeword(std::span<const std::uint8_t> word) const;

  SyndromePair syndromes(std::span<const std::uint8_t> word) const;

 private:
  int shorten_;
  int n_;
  int k_;
  std::vector<std::uint8_t> w1_;  // alpha^i for the BCH part
  std::vector<std::uint8_t> w3_;  // alpha^{3i}
  // Rows of the inverse of the map from the 16 completion bits to (S1, S3).
  std::array<std::uint16_t, 16> tail_inv_{};
};

}  // namespace pcfec
