#include "pcfec/component195.hpp"

#include <bit>
#include <stdexcept>

namespace pcfec {

ComponentCode::ComponentCode(int shorten) : shorten_(shorten) {
  if (shorten < 0 || shorten > kDefaultShorten)
    throw std::invalid_argument("ComponentCode: shorten must be in [0, 61]");
  n_ = kBchN + 1 - shorten_;
  k_ = kBchK - shorten_;

  w1_.resize(std::size_t(n_ - 1));
  w3_.resize(std::size_t(n_ - 1));
  for (int i = 0; i < n_ - 1; ++i) {
    w1_[std::size_t(i)] = alpha_pow(unsigned(i)).value();
    w3_[std::size_t(i)] = alpha_pow(unsigned(3 * i)).value();
  }

  // Invert the 16x16 GF(2) map from the completion positions k..k+15 to the
  // syndrome bits (S1 low, S3 high). Nonsingular because no nonzero BCH
  // codeword fits in 16 consecutive positions (the generator has degree 16).
  std::array<std::uint32_t, 16> rows{};
  for (int m = 0; m < 16; ++m) {
    std::uint16_t col = std::uint16_t(w1_[std::size_t(k_ + m)]) |
                        std::uint16_t(w3_[std::size_t(k_ + m)]) << 8;
    for (int i = 0; i < 16; ++i)
      rows[std::size_t(i)] |= std::uint32_t((col >> i) & 1u) << m;
  }
  for (int i = 0; i < 16; ++i) rows[std::size_t(i)] |= 1u << (16 + i);
  for (int col = 0; col < 16; ++col) {
    int pivot = -1;
    for (int r = col; r < 16; ++r)
      if ((rows[std::size_t(r)] >> col) & 1u) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::logic_error("completion map is singular");
    std::swap(rows[std::size_t(col)], rows[std::size_t(pivot)]);
    for (int r = 0; r < 16; ++r)
      if (r != col && ((rows[std::size_t(r)] >> col) & 1u))
        rows[std::size_t(r)] ^= rows[std::size_t(col)];
  }
  for (int i = 0; i < 16; ++i)
    tail_inv_[std::size_t(i)] = std::uint16_t(rows[std::size_t(i)] >> 16);
}

void ComponentCode::encode(std::span<const std::uint8_t> info,
                           std::span<std::uint8_t> out) const {
  if (int(info.size()) != k_)
    throw std::invalid_argument("ComponentCode::encode: wrong info length");
  if (int(out.size()) != n_)
    throw std::invalid_argument("ComponentCode::encode: wrong output length");

  // The shortened positions are leading zeros of the division, so the LFSR
  // only has to run over the k live information bits.
  const std::uint32_t glow = bch_generator() & 0xFFFF;
  std::uint32_t reg = 0;
  std::uint8_t acc = 0;
  for (int j = k_ - 1; j >= 0; --j) {
    std::uint32_t fb = (info[std::size_t(j)] & 1u) ^ ((reg >> 15) & 1u);
    reg = (reg << 1) & 0xFFFF;
    if (fb) reg ^= glow;
  }
  for (int i = 0; i < 16; ++i) {
    out[std::size_t(i)] = std::uint8_t((reg >> i) & 1u);
    acc ^= out[std::size_t(i)];
  }
  for (int j = 0; j < k_; ++j) {
    out[std::size_t(16 + j)] = std::uint8_t(info[std::size_t(j)] & 1u);
    acc ^= out[std::size_t(16 + j)];
  }
  out[std::size_t(n_ - 1)] = acc;  // even overall parity
}

std::vector<std::uint8_t> ComponentCode::encode(
    std::span<const std::uint8_t> info) const {
  std::vector<std::uint8_t> out(std::size_t(n_), 0);
  encode(info, out);
  return out;
}

SyndromePair ComponentCode::syndromes(std::span<const std::uint8_t> word) const {
  std::uint8_t s1 = 0, s3 = 0;
  for (int i = 0; i < n_ - 1; ++i) {
    std::uint8_t m = std::uint8_t(-(word[std::size_t(i)] & 1));
    s1 ^= w1_[std::size_t(i)] & m;
    s3 ^= w3_[std::size_t(i)] & m;
  }
  return {GfElem(s1), GfElem(s3)};
}

ComponentOutcome ComponentCode::decode(std::span<const std::uint8_t> word) const {
  if (int(word.size()) != n_)
    throw std::invalid_argument("ComponentCode::decode: wrong word length");

  std::uint8_t s1 = 0, s3 = 0, par = 0;
  for (int i = 0; i < n_ - 1; ++i) {
    std::uint8_t b = word[std::size_t(i)] & 1u;
    std::uint8_t m = std::uint8_t(-b);
    s1 ^= w1_[std::size_t(i)] & m;
    s3 ^= w3_[std::size_t(i)] & m;
    par ^= b;
  }
  par ^= word[std::size_t(n_ - 1)] & 1u;

  ComponentOutcome out;
  BchOutcome bch = bch_decode_syndromes({GfElem(s1), GfElem(s3)});
  if (bch.kind == BchOutcome::Kind::Failure) {
    out.status = ComponentOutcome::Status::Failure;
    return out;
  }
  const int d = bch.count();
  for (int i = 0; i < d; ++i) {
    // A location inside the shortened region means more than t real errors.
    if (bch.pos[std::size_t(i)] >= n_ - 1) {
      out.status = ComponentOutcome::Status::Failure;
      return out;
    }
  }
  const int de = (d + par) & 1;
  if (d + de > kBchT) {
    out.status = ComponentOutcome::Status::Failure;
    return out;
  }
  if (d + de == 0) {
    out.status = ComponentOutcome::Status::NoErrors;
    return out;
  }
  out.status = ComponentOutcome::Status::Corrected;
  for (int i = 0; i < d; ++i) out.flips[std::size_t(out.flip_count++)] = bch.pos[std::size_t(i)];
  if (de) out.flips[std::size_t(out.flip_count++)] = std::int16_t(n_ - 1);
  return out;
}

void ComponentCode::complete_from_prefix(std::span<std::uint8_t> word) const {
  if (int(word.size()) != n_)
    throw std::invalid_argument("ComponentCode::complete_from_prefix: wrong length");

  std::uint8_t s1 = 0, s3 = 0, par = 0;
  for (int i = 0; i < k_; ++i) {
    std::uint8_t b = word[std::size_t(i)] & 1u;
    std::uint8_t m = std::uint8_t(-b);
    s1 ^= w1_[std::size_t(i)] & m;
    s3 ^= w3_[std::size_t(i)] & m;
    par ^= b;
  }
  const std::uint16_t s16 = std::uint16_t(s1) | std::uint16_t(s3) << 8;
  for (int m = 0; m < 16; ++m) {
    std::uint8_t b = std::uint8_t(std::popcount(std::uint16_t(tail_inv_[std::size_t(m)] & s16)) & 1);
    word[std::size_t(k_ + m)] = b;
    par ^= b;
  }
  word[std::size_t(n_ - 1)] = par;
}

bool ComponentCode::is_codeword(std::span<const std::uint8_t> word) const {
  if (int(word.size()) != n_) return false;
  std::uint8_t s1 = 0, s3 = 0, par = 0;
  for (int i = 0; i < n_ - 1; ++i) {
    std::uint8_t b = word[std::size_t(i)] & 1u;
    std::uint8_t m = std::uint8_t(-b);
    s1 ^= w1_[std::size_t(i)] & m;
    s3 ^= w3_[std::size_t(i)] & m;
    par ^= b;
  }
  par ^= word[std::size_t(n_ - 1)] & 1u;
  return s1 == 0 && s3 == 0 && par == 0;
}

}  // namespace pcfec
