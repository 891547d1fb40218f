#include "combicache/gf65536.hpp"

#include <vector>

#include "combicache/errors.hpp"

namespace combicache {

namespace {

struct Tables {
  std::vector<std::uint16_t> log;
  std::vector<std::uint16_t> exp;

  Tables() : log(Gf16::kOrder, 0), exp(2 * (Gf16::kOrder - 1), 0)
  {
    std::uint32_t b = 1;
    for (std::uint32_t i = 0; i < Gf16::kOrder - 1; ++i) {
      exp[i] = static_cast<std::uint16_t>(b);
      exp[i + Gf16::kOrder - 1] = static_cast<std::uint16_t>(b);
      log[b] = static_cast<std::uint16_t>(i);
      b <<= 1;
      if ((b & Gf16::kOrder) != 0) {
        b ^= Gf16::kPrimitivePolynomial;
      }
    }
  }
};

const Tables& tables()
{
  static const Tables t;
  return t;
}

}  // namespace

const std::uint16_t* Gf16::log_table() { return tables().log.data(); }
const std::uint16_t* Gf16::exp_table() { return tables().exp.data(); }

Gf16 operator*(Gf16 a, Gf16 b)
{
  if (a.is_zero() || b.is_zero()) {
    return Gf16();
  }
  const auto& t = tables();
  return Gf16(t.exp[static_cast<std::uint32_t>(t.log[a.value()]) + t.log[b.value()]]);
}

Gf16 operator/(Gf16 a, Gf16 b)
{
  return a * b.inverse();
}

Gf16 Gf16::inverse() const
{
  if (is_zero()) {
    throw CodecError("GF(2^16): inverse of zero");
  }
  const auto& t = tables();
  return Gf16(t.exp[(kOrder - 1 - t.log[value_]) % (kOrder - 1)]);
}

Gf16 Gf16::pow(std::uint32_t e) const
{
  if (e == 0) {
    return Gf16(1);
  }
  if (is_zero()) {
    return Gf16();
  }
  const auto& t = tables();
  const std::uint64_t l = (static_cast<std::uint64_t>(t.log[value_]) * e) % (kOrder - 1);
  return Gf16(t.exp[l]);
}

}  // namespace combicache
