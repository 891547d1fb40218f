#include <cstring>

#include "combicache/combinatorics.hpp"
#include "combicache/errors.hpp"
#include "combicache/kernels.hpp"
#include "combicache/subsets.hpp"

namespace combicache::kernels {

void xor_into(std::span<std::uint8_t> dst, ByteView src)
{
  if (dst.size() < src.size()) {
    throw CodecError("xor_into: destination shorter than source");
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] ^= src[i];
  }
}

void gf_mul_add(std::span<std::uint8_t> dst, ByteView src, Gf16 c)
{
  if (dst.size() != src.size() || (src.size() % 2) != 0) {
    throw CodecError("gf_mul_add: buffers must have equal even length");
  }
  if (c.is_zero()) {
    return;
  }
  const std::uint16_t* log = Gf16::log_table();
  const std::uint16_t* exp = Gf16::exp_table();
  const std::uint32_t lc = log[c.value()];
  for (std::size_t i = 0; i < src.size(); i += 2) {
    const std::uint16_t s = static_cast<std::uint16_t>(src[i] | (src[i + 1] << 8));
    if (s == 0) {
      continue;
    }
    const std::uint16_t p = exp[lc + log[s]];
    dst[i] ^= static_cast<std::uint8_t>(p & 0xFF);
    dst[i + 1] ^= static_cast<std::uint8_t>(p >> 8);
  }
}

namespace {

void check_combine_shapes(std::span<const Gf16> coeff, std::span<const ByteView> in, std::span<Bytes> out)
{
  if (coeff.size() != in.size() * out.size()) {
    throw CodecError("linear_combine: coefficient matrix shape mismatch");
  }
  const std::size_t len = in.empty() ? 0 : in.front().size();
  for (const auto& v : in) {
    if (v.size() != len) {
      throw CodecError("linear_combine: input length mismatch");
    }
  }
  if ((len % 2) != 0) {
    throw CodecError("linear_combine: symbol length must be a multiple of 2 bytes");
  }
}

}  // namespace

void linear_combine_serial(std::span<const Gf16> coeff, std::span<const ByteView> in, std::span<Bytes> out)
{
  check_combine_shapes(coeff, in, out);
  const std::size_t len = in.empty() ? 0 : in.front().size();
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j].assign(len, 0);
    for (std::size_t i = 0; i < in.size(); ++i) {
      gf_mul_add(out[j], in[i], coeff[j * in.size() + i]);
    }
  }
}

std::vector<std::uint64_t> uncovered_cached_counts_serial(const CombinationNetwork& net, int q)
{
  const int kpp = net.K_double_prime();
  if (q < 1 || q > kpp) {
    throw ParameterError("q out of range");
  }
  const std::uint64_t cap = enumeration_cap();
  if (binom(kpp, q) > cap) {
    throw EnumerationCapError("collection enumeration exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t full = net.all_relays().mask();
  const auto& subsets = net.small_subsets();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(net.K()), 0);

  for_each_combination(kpp, q, [&](std::span<const int> c) {
    std::uint32_t u = 0;
    for (int i : c) {
      u |= subsets[static_cast<std::size_t>(i)].mask();
    }
    if (u == full) {
      return true;
    }
    for (int k = 1; k <= net.K(); ++k) {
      const std::uint32_t hk = net.users()[static_cast<std::size_t>(k - 1)].mask();
      bool inside = false;
      for (int i : c) {
        inside = inside || (subsets[static_cast<std::size_t>(i)].mask() & ~hk) == 0;
      }
      if (!inside) {
        ++counts[static_cast<std::size_t>(k - 1)];
      }
    }
    return true;
  });
  return counts;
}

}  // namespace combicache::kernels
