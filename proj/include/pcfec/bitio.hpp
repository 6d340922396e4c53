#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcfec {

// Packed block layout: row-major, each row packed most-significant-bit-first
// and padded to a whole byte. A 195-bit row takes 25 bytes, a 178-bit row 23.
constexpr int packed_row_bytes(int cols) { return (cols + 7) / 8; }
constexpr std::size_t packed_block_bytes(int rows, int cols) {
  return std::size_t(rows) * std::size_t(packed_row_bytes(cols));
}

void pack_row(std::span<const std::uint8_t> bits, std::span<std::uint8_t> out);
void unpack_row(std::span<const std::uint8_t> bytes, std::span<std::uint8_t> bits);

std::vector<std::uint8_t> pack_block(std::span<const std::uint8_t> bits, int rows,
                                     int cols);
std::vector<std::uint8_t> unpack_block(std::span<const std::uint8_t> bytes, int rows,
                                       int cols);

}  // namespace pcfec
