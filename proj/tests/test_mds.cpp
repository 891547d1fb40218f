#include <doctest.h>

#include <random>

#include "combicache/errors.hpp"
#include "combicache/mds.hpp"
#include "combicache/subsets.hpp"
#include "oracles.hpp"

using namespace combicache;

namespace {

std::vector<Bytes> random_source(std::size_t k, std::size_t len, std::mt19937_64& rng)
{
  std::vector<Bytes> src(k, Bytes(len));
  for (auto& s : src) {
    for (auto& b : s) {
      b = static_cast<std::uint8_t>(rng());
    }
  }
  return src;
}

std::vector<ByteView> views(const std::vector<Bytes>& v)
{
  return {v.begin(), v.end()};
}

std::uint16_t word(const Bytes& s, std::size_t w)
{
  return static_cast<std::uint16_t>(s[2 * w] | (s[2 * w + 1] << 8));
}

}  // namespace

TEST_SUITE("mds")
{
  TEST_CASE("encoding is polynomial evaluation at the symbol index")
  {
    std::mt19937_64 rng(5);
    for (auto [n, k] : {std::pair<std::size_t, std::size_t>{6, 5}, {15, 4}, {40, 13}, {9, 1}}) {
      const MdsCode code(n, k);
      const auto src = random_source(k, 8, rng);
      const auto coded = code.encode(views(src));
      REQUIRE(coded.size() == n);
      for (std::size_t w = 0; w < 4; ++w) {
        std::vector<std::uint16_t> y;
        for (const auto& s : src) {
          y.push_back(word(s, w));
        }
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(word(coded[j], w) == oracle::lagrange_eval(y, static_cast<std::uint16_t>(j)));
        }
      }
    }
  }

  TEST_CASE("generator matches encode of unit vectors")
  {
    const MdsCode code(12, 5);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<Bytes> src(5, Bytes(2, 0));
      src[i][0] = 1;
      const auto coded = code.encode_serial(views(src));
      for (std::size_t j = 0; j < 12; ++j) {
        CHECK(word(coded[j], 0) == code.generator(i, j).value());
      }
    }
  }

  TEST_CASE("any k of n decode, exhaustive for n <= 10")
  {
    std::mt19937_64 rng(9);
    for (std::size_t n = 1; n <= 10; ++n) {
      for (std::size_t k = 1; k <= n; ++k) {
        const MdsCode code(n, k);
        const auto src = random_source(k, 4, rng);
        const auto coded = code.encode(views(src));
        for_each_combination(static_cast<int>(n), static_cast<int>(k), [&](std::span<const int> c) {
          std::vector<std::pair<std::size_t, ByteView>> avail;
          for (int j : c) {
            avail.emplace_back(static_cast<std::size_t>(j), coded[static_cast<std::size_t>(j)]);
          }
          REQUIRE(code.decode_serial(avail) == src);
          return true;
        });
      }
    }
  }

  TEST_CASE("random subsets for large codes, serial and parallel agree")
  {
    std::mt19937_64 rng(21);
    const MdsCode code(300, 120);
    const auto src = random_source(120, 64, rng);
    const auto coded = code.encode(views(src));
    CHECK(coded == code.encode_serial(views(src)));
    std::vector<std::size_t> idx(300);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      idx[i] = i;
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<std::pair<std::size_t, ByteView>> avail;
      for (std::size_t i = 0; i < 120; ++i) {
        avail.emplace_back(idx[i], coded[idx[i]]);
      }
      REQUIRE(code.decode(avail) == src);
      REQUIRE(code.decode_serial(avail) == src);
    }
  }

  TEST_CASE("decode input validation")
  {
    const MdsCode code(6, 3);
    std::mt19937_64 rng(1);
    const auto src = random_source(3, 4, rng);
    const auto coded = code.encode(views(src));
    std::vector<std::pair<std::size_t, ByteView>> two{{0, coded[0]}, {4, coded[4]}};
    CHECK_THROWS_AS(code.decode(two), CodecError);
    std::vector<std::pair<std::size_t, ByteView>> dup{{0, coded[0]}, {0, coded[0]}, {4, coded[4]}};
    CHECK_THROWS_AS(code.decode(dup), CodecError);
    std::vector<std::pair<std::size_t, ByteView>> oob{{0, coded[0]}, {1, coded[1]}, {6, coded[4]}};
    CHECK_THROWS_AS(code.decode(oob), CodecError);
    const Bytes odd(3, 0);
    std::vector<std::pair<std::size_t, ByteView>> bad{{0, odd}, {1, odd}, {2, odd}};
    CHECK_THROWS_AS(code.decode(bad), CodecError);
    CHECK_THROWS_AS(MdsCode(3, 4), CodecError);
    CHECK_THROWS_AS(MdsCode(65537, 2), CodecError);
    CHECK_NOTHROW(MdsCode(65536, 1));
  }
}
