#include "pcfec/product.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pcfec {

namespace {

constexpr int kPpMaxFailures = kBchT + 1;  // post-processing window, 3

bool pp_gate(std::size_t failures) {
  return failures > 0 && failures <= std::size_t(kPpMaxFailures);
}

// Decoding state for one product codeword. Lines keep their last component
// outcome until some bit of theirs changes, which both skips redundant
// decodes and gives the failure registers their "most recent half-iteration"
// meaning directly.
class Decoder {
 public:
  Decoder(const ComponentCode& comp, ProductMatrix& m)
      : comp_(comp),
        m_(m),
        n_(comp.n()),
        row_dirty_(std::size_t(n_), 1),
        col_dirty_(std::size_t(n_), 1),
        row_failed_(std::size_t(n_), 0),
        col_failed_(std::size_t(n_), 0) {}

  void decode_row(int r) {
    if (!row_dirty_[std::size_t(r)]) return;
    auto out = comp_.decode(m_.row(r));
    if (out.status == ComponentOutcome::Status::Corrected) {
      for (int i = 0; i < out.flip_count; ++i) {
        int c = out.flips[std::size_t(i)];
        m_.at(r, c) ^= 1;
        col_dirty_[std::size_t(c)] = 1;
      }
    }
    row_dirty_[std::size_t(r)] = 0;
    row_failed_[std::size_t(r)] = out.status == ComponentOutcome::Status::Failure;
  }

  void decode_col(int c) {
    if (!col_dirty_[std::size_t(c)]) return;
    for (int r = 0; r < n_; ++r) buf_[std::size_t(r)] = m_.at(r, c);
    auto out = comp_.decode({buf_.data(), std::size_t(n_)});
    if (out.status == ComponentOutcome::Status::Corrected) {
      for (int i = 0; i < out.flip_count; ++i) {
        int r = out.flips[std::size_t(i)];
        m_.at(r, c) ^= 1;
        row_dirty_[std::size_t(r)] = 1;
      }
    }
    col_dirty_[std::size_t(c)] = 0;
    col_failed_[std::size_t(c)] = out.status == ComponentOutcome::Status::Failure;
  }

  // Write the row-failure pattern into a failed column, the hardware
  // substitute for the deferred intersection flips.
  void flip_rows_into_col(const std::vector<std::int16_t>& rows, int c) {
    for (int r : rows) {
      m_.at(r, c) ^= 1;
      row_dirty_[std::size_t(r)] = 1;
    }
    col_dirty_[std::size_t(c)] = 1;
  }

  void flip_intersections(const std::vector<std::int16_t>& rows,
                          const std::vector<std::int16_t>& cols) {
    for (int r : rows)
      for (int c : cols) {
        m_.at(r, c) ^= 1;
        row_dirty_[std::size_t(r)] = 1;
        col_dirty_[std::size_t(c)] = 1;
      }
  }

  std::vector<std::int16_t> failed(Orientation o) const {
    const auto& flags = o == Orientation::Rows ? row_failed_ : col_failed_;
    std::vector<std::int16_t> out;
    for (int i = 0; i < n_; ++i)
      if (flags[std::size_t(i)]) out.push_back(std::int16_t(i));
    return out;
  }

  bool settled() const {
    auto zero = [](std::uint8_t v) { return v == 0; };
    return std::all_of(row_dirty_.begin(), row_dirty_.end(), zero) &&
           std::all_of(col_dirty_.begin(), col_dirty_.end(), zero) &&
           std::all_of(row_failed_.begin(), row_failed_.end(), zero) &&
           std::all_of(col_failed_.begin(), col_failed_.end(), zero);
  }

  bool any_col_failed() const {
    return std::any_of(col_failed_.begin(), col_failed_.end(),
                       [](std::uint8_t v) { return v != 0; });
  }

  bool col_failed(int c) const { return col_failed_[std::size_t(c)]; }

 private:
  const ComponentCode& comp_;
  ProductMatrix& m_;
  int n_;
  std::vector<std::uint8_t> row_dirty_, col_dirty_;
  std::vector<std::uint8_t> row_failed_, col_failed_;
  std::array<std::uint8_t, 256> buf_{};
};

}  // namespace

ProductMatrix ProductCode::encode(std::span<const std::uint8_t> info) const {
  const int n = comp_.n(), k = comp_.k();
  if (info.size() != std::size_t(k) * std::size_t(k))
    throw std::invalid_argument("ProductCode::encode: info must be k*k bits");

  ProductMatrix m(n);
  for (int r = 0; r < k; ++r)
    comp_.encode(info.subspan(std::size_t(r) * std::size_t(k), std::size_t(k)), m.row(r));

  std::array<std::uint8_t, 256> col{};
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < k; ++r) col[std::size_t(r)] = m.at(r, c);
    comp_.complete_from_prefix({col.data(), std::size_t(n)});
    for (int r = k; r < n; ++r) m.at(r, c) = col[std::size_t(r)];
  }
  return m;
}

std::vector<std::uint8_t> ProductCode::extract_info(const ProductMatrix& m) const {
  const int k = comp_.k();
  std::vector<std::uint8_t> info(std::size_t(k) * std::size_t(k));
  for (int r = 0; r < k; ++r) {
    auto row = m.row(r);
    for (int j = 0; j < k; ++j)
      info[std::size_t(r) * std::size_t(k) + std::size_t(j)] = row[std::size_t(kInfoOffset + j)];
  }
  return info;
}

std::vector<std::int16_t> ProductCode::half_iteration(ProductMatrix& m,
                                                      Orientation o) const {
  const int n = comp_.n();
  std::vector<std::int16_t> failed;
  std::array<std::uint8_t, 256> buf{};
  for (int line = 0; line < n; ++line) {
    ComponentOutcome out;
    if (o == Orientation::Rows) {
      out = comp_.decode(m.row(line));
      for (int i = 0; i < out.flip_count; ++i) m.at(line, out.flips[std::size_t(i)]) ^= 1;
    } else {
      for (int r = 0; r < n; ++r) buf[std::size_t(r)] = m.at(r, line);
      out = comp_.decode({buf.data(), std::size_t(n)});
      for (int i = 0; i < out.flip_count; ++i) m.at(out.flips[std::size_t(i)], line) ^= 1;
    }
    if (out.status == ComponentOutcome::Status::Failure) failed.push_back(std::int16_t(line));
  }
  return failed;
}

DecodeReport ProductCode::decode(ProductMatrix m, const DecoderConfig& cfg) const {
  const int n = comp_.n();
  if (cfg.iterations < 1)
    throw std::invalid_argument("DecoderConfig: iterations must be >= 1");
  if (m.n != n || m.bits.size() != std::size_t(n) * std::size_t(n))
    throw std::invalid_argument("ProductCode::decode: wrong matrix size");

  DecodeReport rep;
  Decoder dec(comp_, m);
  const int total_halves = 2 * cfg.iterations;
  std::vector<std::int16_t> row_reg;

  for (int h = 1; h <= total_halves; ++h) {
    rep.half_iterations_run = h;
    if (h % 2 == 1) {
      for (int r = 0; r < n; ++r) dec.decode_row(r);
    } else {
      // In the hardware schedule the last column half-iteration performs the
      // intersection flips eagerly: a failing column receives the whole
      // row-failure pattern on the spot.
      const bool eager = cfg.post_processing && cfg.schedule == Schedule::Hardware &&
                         h == total_halves;
      if (eager) row_reg = dec.failed(Orientation::Rows);
      const bool substitute = eager && pp_gate(row_reg.size());
      for (int c = 0; c < n; ++c) {
        dec.decode_col(c);
        if (substitute && dec.col_failed(c)) {
          dec.flip_rows_into_col(row_reg, c);
          rep.pp_applied = true;
        }
      }
    }
    if (cfg.early_exit && h < total_halves && dec.settled()) break;
  }

  auto rows_failed = dec.failed(Orientation::Rows);
  auto cols_failed = dec.failed(Orientation::Cols);

  if (cfg.post_processing && pp_gate(rows_failed.size()) && pp_gate(cols_failed.size())) {
    if (cfg.schedule == Schedule::Reference) {
      dec.flip_intersections(rows_failed, cols_failed);
      rep.pp_applied = true;
    }
    // Both schedules finish with one pass over the failed lines only.
    rep.pp_iteration_run = true;
    for (int r : rows_failed) dec.decode_row(r);
    for (int c : cols_failed) dec.decode_col(c);
  }

  rep.success = !dec.any_col_failed();
  rep.final_registers.rows = dec.failed(Orientation::Rows);
  rep.final_registers.cols = dec.failed(Orientation::Cols);
  rep.matrix = std::move(m);
  return rep;
}

bool ProductCode::verify_codeword(const ProductMatrix& m) const {
  const int n = comp_.n();
  if (m.n != n) return false;
  std::array<std::uint8_t, 256> buf{};
  for (int r = 0; r < n; ++r)
    if (!comp_.is_codeword(m.row(r))) return false;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) buf[std::size_t(r)] = m.at(r, c);
    if (!comp_.is_codeword({buf.data(), std::size_t(n)})) return false;
  }
  return true;
}

}  // namespace pcfec
