#include "combicache/rational.hpp"

#include <array>
#include <charconv>

namespace combicache {

std::string to_fraction_string(const Rational& x)
{
  const BigInt num = numerator_of(x);
  const BigInt den = denominator_of(x);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

double to_double(const Rational& x)
{
  return x.convert_to<double>();
}

std::string to_decimal_string(const Rational& x)
{
  std::array<char, 64> buf{};
  const double v = to_double(x);
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf.data(), end);
}

}  // namespace combicache
