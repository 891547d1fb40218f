#pragma once

// Data-parallel inner loops. Every kernel comes as a plain serial reference
// and an OpenMP version; tests assert they agree bit for bit and
// bench/bench_kernels compares their throughput.

#include <cstdint>
#include <span>
#include <vector>

#include "combicache/gf65536.hpp"
#include "combicache/topology.hpp"

namespace combicache {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

namespace kernels {

/// dst[i] ^= src[i] for i < src.size(). Requires dst.size() >= src.size().
void xor_into(std::span<std::uint8_t> dst, ByteView src);

/// dst ^= c * src over little-endian 16-bit words. Sizes must match and be even.
void gf_mul_add(std::span<std::uint8_t> dst, ByteView src, Gf16 c);

/// out[j] = sum_i coeff[j * in.size() + i] * in[i]. Every in/out buffer has
/// the same even length; out buffers are overwritten.
void linear_combine_serial(std::span<const Gf16> coeff, std::span<const ByteView> in, std::span<Bytes> out);
void linear_combine_omp(std::span<const Gf16> coeff, std::span<const ByteView> in, std::span<Bytes> out);

/// For each user k (index k-1): the number of q-collections of
/// (r-1)-subsets whose relay union is not [H] and with no member inside
/// H_k. Throws EnumerationCapError above the enumeration cap.
std::vector<std::uint64_t> uncovered_cached_counts_serial(const CombinationNetwork& net, int q);
std::vector<std::uint64_t> uncovered_cached_counts_omp(const CombinationNetwork& net, int q);

int max_threads();

}  // namespace kernels
}  // namespace combicache
