#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcfec/component195.hpp"

namespace pcfec {

struct ProductMatrix {
  int n = 0;
  std::vector<std::uint8_t> bits;  // row-major, n*n entries of 0/1

  ProductMatrix() = default;
  explicit ProductMatrix(int size) : n(size), bits(std::size_t(size) * std::size_t(size), 0) {}

  std::uint8_t& at(int r, int c) { return bits[std::size_t(r) * std::size_t(n) + std::size_t(c)]; }
  std::uint8_t at(int r, int c) const { return bits[std::size_t(r) * std::size_t(n) + std::size_t(c)]; }
  std::span<std::uint8_t> row(int r) { return {bits.data() + std::size_t(r) * std::size_t(n), std::size_t(n)}; }
  std::span<const std::uint8_t> row(int r) const { return {bits.data() + std::size_t(r) * std::size_t(n), std::size_t(n)}; }

  friend bool operator==(const ProductMatrix&, const ProductMatrix&) = default;
};

enum class Orientation : std::uint8_t { Rows, Cols };
enum class Schedule : std::uint8_t { Reference, Hardware };

struct DecoderConfig {
  int iterations = 2;             // full iterations L; 2L half-iterations run
  bool post_processing = true;
  Schedule schedule = Schedule::Hardware;
  // Stop the standard half-iterations once a pass applies no flip and records
  // no failure. Off by default: the fixed schedule is the reference behavior.
  bool early_exit = false;
};

// Failed line indices from the most recent half-iteration per orientation,
// plus any post-processing re-decodes of those same lines.
struct FailureRegisters {
  std::vector<std::int16_t> rows;
  std::vector<std::int16_t> cols;
};

struct DecodeReport {
  bool success = false;  // column-failure register empty at the end
  ProductMatrix matrix;
  int half_iterations_run = 0;
  bool pp_applied = false;        // intersection flips were written
  bool pp_iteration_run = false;  // the extra row/column re-decode happened
  FailureRegisters final_registers;
};

// (n, k)^2 product code over the extended shortened component code. Rows
// 0..k-1 of a codeword are the component encodings of the information rows;
// every column is completed to a component codeword below them.
class ProductCode {
 public:
  explicit ProductCode(int shorten = kDefaultShorten) : comp_(shorten) {}

  const ComponentCode& component() const { return comp_; }
  int n() const { return comp_.n(); }
  int k() const { return comp_.k(); }
  // Column index where the information bits of a row start.
  static constexpr int kInfoOffset = kBchParityBits;

  // info is k*k row-major.
  ProductMatrix encode(std::span<const std::uint8_t> info) const;
  std::vector<std::uint8_t> extract_info(const ProductMatrix& m) const;

  // One full pass of component decoding over all lines of one orientation,
  // corrections applied in place. Returns the failed line indices. Lines of
  // one orientation own disjoint bits, so the visit order cannot matter.
  std::vector<std::int16_t> half_iteration(ProductMatrix& m, Orientation o) const;

  DecodeReport decode(ProductMatrix m, const DecoderConfig& cfg = {}) const;

  bool verify_codeword(const ProductMatrix& m) const;

 private:
  ComponentCode comp_;
};

}  // namespace pcfec
