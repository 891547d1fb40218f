#include <doctest.h>

#include <random>

#include "combicache/errors.hpp"
#include "combicache/gf65536.hpp"
#include "oracles.hpp"

using combicache::Gf16;

TEST_SUITE("gf")
{
  TEST_CASE("multiplication matches carry-less reference")
  {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200000; ++i) {
      const auto a = static_cast<std::uint16_t>(rng());
      const auto b = static_cast<std::uint16_t>(rng());
      REQUIRE((Gf16(a) * Gf16(b)).value() == oracle::gf_mul(a, b));
    }
    for (std::uint32_t a = 0; a < 65536; a += 257) {
      CHECK((Gf16(static_cast<std::uint16_t>(a)) * Gf16(0)).value() == 0);
      CHECK((Gf16(static_cast<std::uint16_t>(a)) * Gf16(1)).value() == a);
    }
  }

  TEST_CASE("x generates the multiplicative group")
  {
    std::uint16_t v = 1;
    std::uint32_t order = 0;
    do {
      v = oracle::gf_mul(v, 2);
      ++order;
    } while (v != 1 && order < 70000);
    CHECK(order == 65535);
    CHECK(Gf16(2).pow(65535).value() == 1);
    CHECK(Gf16(2).pow(65535 / 3).value() != 1);
    CHECK(Gf16(2).pow(65535 / 5).value() != 1);
    CHECK(Gf16(2).pow(65535 / 17).value() != 1);
    CHECK(Gf16(2).pow(65535 / 257).value() != 1);
  }

  TEST_CASE("inverse and division")
  {
    for (std::uint32_t a = 1; a < 65536; ++a) {
      const Gf16 x(static_cast<std::uint16_t>(a));
      REQUIRE((x * x.inverse()).value() == 1);
    }
    CHECK(Gf16(7).inverse().value() == oracle::gf_inv(7));
    CHECK((Gf16(1234) / Gf16(77) * Gf16(77)).value() == 1234);
    CHECK_THROWS_AS(Gf16(0).inverse(), combicache::CodecError);
    CHECK_THROWS_AS(Gf16(5) / Gf16(0), combicache::CodecError);
  }

  TEST_CASE("field axioms on random triples")
  {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20000; ++i) {
      const Gf16 a(static_cast<std::uint16_t>(rng()));
      const Gf16 b(static_cast<std::uint16_t>(rng()));
      const Gf16 c(static_cast<std::uint16_t>(rng()));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a + a == Gf16(0));
    }
  }
}
