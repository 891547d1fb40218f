#pragma once

#include <cstdint>

namespace combicache {

/// Element of GF(2^16) = GF(2)[x] / (x^16 + x^12 + x^3 + x + 1).
/// Addition is XOR; multiplication goes through log/antilog tables built
/// once on first use.
class Gf16 {
 public:
  static constexpr std::uint32_t kPrimitivePolynomial = 0x1100B;
  static constexpr std::uint32_t kOrder = 1U << 16;

  constexpr Gf16() = default;
  constexpr explicit Gf16(std::uint16_t v) : value_(v) {}

  constexpr std::uint16_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr Gf16 operator+(Gf16 a, Gf16 b) { return Gf16(static_cast<std::uint16_t>(a.value_ ^ b.value_)); }
  friend constexpr Gf16 operator-(Gf16 a, Gf16 b) { return a + b; }
  friend Gf16 operator*(Gf16 a, Gf16 b);
  /// Throws CodecError on division by zero.
  friend Gf16 operator/(Gf16 a, Gf16 b);
  Gf16& operator+=(Gf16 o) { return *this = *this + o; }
  Gf16& operator*=(Gf16 o) { return *this = *this * o; }

  /// Throws CodecError for zero.
  Gf16 inverse() const;
  Gf16 pow(std::uint32_t e) const;

  /// Table access for the region kernels.
  static const std::uint16_t* log_table();
  static const std::uint16_t* exp_table();  // 2 * (kOrder - 1) entries

  constexpr bool operator==(const Gf16&) const = default;

 private:
  std::uint16_t value_ = 0;
};

}  // namespace combicache
