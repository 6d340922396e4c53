#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

namespace pcfec {

// GF(2^8) with primitive polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D),
// generator alpha = 2. All tables are built at compile time; changing the
// polynomial invalidates every generator polynomial and golden vector built
// on top of it.
inline constexpr unsigned kGfPrimitivePoly = 0x11D;
inline constexpr int kGfOrder = 255;  // size of the multiplicative group

namespace detail {

// Shift-and-reduce product, used only to seed the tables.
constexpr std::uint8_t gf_mul_slow(std::uint8_t a, std::uint8_t b) {
  unsigned acc = 0;
  unsigned aa = a;
  for (unsigned bb = b; bb != 0; bb >>= 1) {
    if (bb & 1) acc ^= aa;
    aa <<= 1;
    if (aa & 0x100) aa ^= kGfPrimitivePoly;
  }
  return static_cast<std::uint8_t>(acc);
}

struct GfTables {
  // exp[i] = alpha^i, doubled so mul can index log[a]+log[b] directly.
  std::array<std::uint8_t, 2 * kGfOrder> exp{};
  std::array<std::uint8_t, 256> log{};  // log[0] unused
  // Roots of x^2 + x + c: quad_root[c] is the even root (the other is
  // quad_root[c] ^ 1); quad_has[c] says whether roots exist at all.
  std::array<std::uint8_t, 256> quad_root{};
  std::array<bool, 256> quad_has{};
};

constexpr GfTables build_gf_tables() {
  GfTables t{};
  unsigned x = 1;
  for (int i = 0; i < kGfOrder; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.exp[i + kGfOrder] = t.exp[i];
    t.log[t.exp[i]] = static_cast<std::uint8_t>(i);
    x <<= 1;
    if (x & 0x100) x ^= kGfPrimitivePoly;
  }
  for (unsigned c = 0; c < 256; ++c) {
    for (unsigned r = 0; r < 256; ++r) {
      std::uint8_t v = gf_mul_slow(static_cast<std::uint8_t>(r),
                                   static_cast<std::uint8_t>(r)) ^
                       static_cast<std::uint8_t>(r);
      if (v == c) {
        // Roots come in pairs {r, r+1}; ascending scan hits the even one first.
        t.quad_root[c] = static_cast<std::uint8_t>(r);
        t.quad_has[c] = true;
        break;
      }
    }
  }
  return t;
}

inline constexpr GfTables kGf = build_gf_tables();

}  // namespace detail

class GfElem {
 public:
  constexpr GfElem() = default;
  constexpr explicit GfElem(std::uint8_t v) : v_(v) {}

  constexpr std::uint8_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr GfElem operator+(GfElem a, GfElem b) {
    return GfElem(static_cast<std::uint8_t>(a.v_ ^ b.v_));
  }
  friend constexpr GfElem operator*(GfElem a, GfElem b) {
    if (a.v_ == 0 || b.v_ == 0) return GfElem(0);
    return GfElem(detail::kGf.exp[detail::kGf.log[a.v_] + detail::kGf.log[b.v_]]);
  }
  // Division by zero is a caller bug; value divided by itself yields 1.
  friend constexpr GfElem operator/(GfElem a, GfElem b) {
    if (a.v_ == 0) return GfElem(0);
    int d = detail::kGf.log[a.v_] - detail::kGf.log[b.v_];
    if (d < 0) d += kGfOrder;
    return GfElem(detail::kGf.exp[d]);
  }
  friend constexpr bool operator==(GfElem a, GfElem b) = default;

 private:
  std::uint8_t v_ = 0;
};

// alpha^e for any non-negative exponent.
constexpr GfElem alpha_pow(unsigned e) {
  return GfElem(detail::kGf.exp[e % kGfOrder]);
}

// Discrete log base alpha, in [0, 254]. Undefined for zero (returns 0).
constexpr int gf_log(GfElem a) { return detail::kGf.log[a.value()]; }

constexpr GfElem gf_cube(GfElem a) { return a * a * a; }

// Both roots of x^2 + x + c over GF(2^8), smaller root first, or nothing if
// c has nonzero trace. When roots exist the second is always the first + 1.
constexpr std::optional<std::pair<GfElem, GfElem>> solve_quadratic(GfElem c) {
  if (!detail::kGf.quad_has[c.value()]) return std::nullopt;
  std::uint8_t r = detail::kGf.quad_root[c.value()];
  return std::make_pair(GfElem(r), GfElem(static_cast<std::uint8_t>(r ^ 1)));
}

}  // namespace pcfec
