#include <doctest.h>

#include <random>

#include "combicache/combinatorics.hpp"
#include "combicache/kernels.hpp"
#include "oracles.hpp"

using namespace combicache;

TEST_SUITE("kernels")
{
  TEST_CASE("gf_mul_add matches per-word reference")
  {
    std::mt19937_64 rng(2);
    Bytes dst(64);
    Bytes src(64);
    for (auto& b : dst) {
      b = static_cast<std::uint8_t>(rng());
    }
    for (auto& b : src) {
      b = static_cast<std::uint8_t>(rng());
    }
    Bytes expect = dst;
    const std::uint16_t c = 0xBEEF;
    for (std::size_t w = 0; w < 32; ++w) {
      const auto s = static_cast<std::uint16_t>(src[2 * w] | (src[2 * w + 1] << 8));
      const auto p = oracle::gf_mul(s, c);
      expect[2 * w] ^= static_cast<std::uint8_t>(p & 0xFF);
      expect[2 * w + 1] ^= static_cast<std::uint8_t>(p >> 8);
    }
    kernels::gf_mul_add(dst, src, Gf16(c));
    CHECK(dst == expect);
  }

  TEST_CASE("linear_combine serial and OpenMP agree")
  {
    std::mt19937_64 rng(4);
    const std::size_t in_n = 17;
    const std::size_t out_n = 23;
    std::vector<Bytes> in(in_n, Bytes(130));
    for (auto& v : in) {
      for (auto& b : v) {
        b = static_cast<std::uint8_t>(rng());
      }
    }
    std::vector<Gf16> coeff(in_n * out_n);
    for (auto& c : coeff) {
      c = Gf16(static_cast<std::uint16_t>(rng()));
    }
    std::vector<ByteView> views(in.begin(), in.end());
    std::vector<Bytes> a(out_n);
    std::vector<Bytes> b(out_n);
    kernels::linear_combine_serial(coeff, views, a);
    kernels::linear_combine_omp(coeff, views, b);
    CHECK(a == b);
  }

  TEST_CASE("uncovered cached counts: serial, OpenMP and oracle agree")
  {
    for (auto [H, r] : {std::pair{4, 2}, {5, 3}, {6, 3}, {5, 2}, {6, 4}}) {
      const auto net = CombinationNetwork::build(H, r);
      for (int q = 1; q <= std::min(net.K_double_prime(), 5); ++q) {
        const auto s = kernels::uncovered_cached_counts_serial(net, q);
        const auto p = kernels::uncovered_cached_counts_omp(net, q);
        REQUIRE(s == p);
        const auto& user1 = net.relays_of_user(1).members();
        CHECK(s[0] == oracle::improved_cached_count(H, r, q, user1));
      }
    }
  }
}
