#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "pcfec/gf256.hpp"

namespace pcfec {

// BCH(255, 239) with t = 2, decoded by the direct syndrome method: S1 and S3
// feed a case analysis instead of Berlekamp-Massey plus Chien search.
//
// Bit i of a codeword carries weight alpha^i in the syndromes. Information
// bits occupy positions 16..254 (info[j] at position 16 + j) and the 16
// parity bits occupy positions 0..15, so shortening removes the highest
// positions.
inline constexpr int kBchN = 255;
inline constexpr int kBchK = 239;
inline constexpr int kBchT = 2;
inline constexpr int kBchParityBits = kBchN - kBchK;

// Generator polynomial, lcm of the minimal polynomials of alpha and alpha^3.
// Bit i of the mask is the coefficient of x^i; degree is exactly 16.
// Computed once from the field tables and checked, not hard-coded.
std::uint32_t bch_generator();

struct SyndromePair {
  GfElem s1;
  GfElem s3;
  bool all_zero() const { return s1.is_zero() && s3.is_zero(); }
};

struct BchOutcome {
  enum class Kind : std::uint8_t { NoError, OneError, TwoErrors, Failure };
  Kind kind = Kind::NoError;
  // Error positions, ascending; count() of them are valid.
  std::array<std::int16_t, 2> pos{-1, -1};

  int count() const {
    switch (kind) {
      case Kind::OneError: return 1;
      case Kind::TwoErrors: return 2;
      default: return 0;
    }
  }
};

// Systematic encoder; info.size() must be 239.
std::array<std::uint8_t, kBchN> bch_encode(std::span<const std::uint8_t> info);

// S1 = sum r_i alpha^i, S3 = sum r_i alpha^{3i}; r.size() must be 255.
SyndromePair bch_syndromes(std::span<const std::uint8_t> r);

// The four-way case analysis on (S1, S3). Positions are in [0, 254]; the
// caller is responsible for rejecting positions inside a shortened region.
BchOutcome bch_decode_syndromes(SyndromePair s);

BchOutcome bch_decode(std::span<const std::uint8_t> r);

}  // namespace pcfec
