#include "pcfec/bitio.hpp"

#include <stdexcept>

namespace pcfec {

void pack_row(std::span<const std::uint8_t> bits, std::span<std::uint8_t> out) {
  if (out.size() != std::size_t(packed_row_bytes(int(bits.size()))))
    throw std::invalid_argument("pack_row: wrong output size");
  std::size_t i = 0;
  for (std::size_t byte = 0; byte < out.size(); ++byte) {
    std::uint8_t acc = 0;
    for (int b = 7; b >= 0 && i < bits.size(); --b, ++i)
      acc |= std::uint8_t((bits[i] & 1u) << b);
    out[byte] = acc;
  }
}

void unpack_row(std::span<const std::uint8_t> bytes, std::span<std::uint8_t> bits) {
  if (bytes.size() != std::size_t(packed_row_bytes(int(bits.size()))))
    throw std::invalid_argument("unpack_row: wrong input size");
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
}

std::vector<std::uint8_t> pack_block(std::span<const std::uint8_t> bits, int rows,
                                     int cols) {
  if (bits.size() != std::size_t(rows) * std::size_t(cols))
    throw std::invalid_argument("pack_block: wrong bit count");
  const int rb = packed_row_bytes(cols);
  std::vector<std::uint8_t> out(packed_block_bytes(rows, cols));
  for (int r = 0; r < rows; ++r)
    pack_row(bits.subspan(std::size_t(r) * std::size_t(cols), std::size_t(cols)),
             {out.data() + std::size_t(r) * std::size_t(rb), std::size_t(rb)});
  return out;
}

std::vector<std::uint8_t> unpack_block(std::span<const std::uint8_t> bytes, int rows,
                                       int cols) {
  if (bytes.size() != packed_block_bytes(rows, cols))
    throw std::invalid_argument("unpack_block: wrong byte count");
  const int rb = packed_row_bytes(cols);
  std::vector<std::uint8_t> bits(std::size_t(rows) * std::size_t(cols));
  for (int r = 0; r < rows; ++r)
    unpack_row({bytes.data() + std::size_t(r) * std::size_t(rb), std::size_t(rb)},
               {bits.data() + std::size_t(r) * std::size_t(cols), std::size_t(cols)});
  return bits;
}

}  // namespace pcfec
