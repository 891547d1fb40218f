#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "combicache/gf65536.hpp"
#include "combicache/kernels.hpp"

namespace combicache {

/// Systematic (n, k) Reed-Solomon style MDS code over GF(2^16).
///
/// Coded symbol j is the value at x = j of the unique polynomial of degree
/// < k that takes the source values at x = 0..k-1, so the first k coded
/// symbols are the source itself. Any k coded symbols determine the
/// polynomial, hence the source (Lagrange interpolation).
class MdsCode {
 public:
  static constexpr std::size_t kMaxLength = Gf16::kOrder;

  /// Throws CodecError unless 1 <= k <= n <= 65536.
  MdsCode(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }

  /// Entry (i, j) of the k x n generator matrix.
  Gf16 generator(std::size_t i, std::size_t j) const;

  /// Returns n coded symbols; the first k are copies of `source`.
  std::vector<Bytes> encode(std::span<const ByteView> source) const;
  std::vector<Bytes> encode_serial(std::span<const ByteView> source) const;

  /// Recovers the k source symbols from at least k (index, symbol) pairs
  /// with distinct indices. Extra pairs beyond the first k are ignored.
  std::vector<Bytes> decode(std::span<const std::pair<std::size_t, ByteView>> available) const;
  std::vector<Bytes> decode_serial(std::span<const std::pair<std::size_t, ByteView>> available) const;

 private:
  // out-of-line helpers share the coefficient setup between the serial
  // and OpenMP paths
  std::vector<Bytes> encode_impl(std::span<const ByteView> source, bool parallel) const;
  std::vector<Bytes> decode_impl(std::span<const std::pair<std::size_t, ByteView>> available,
                                 bool parallel) const;

  std::size_t n_;
  std::size_t k_;
  // barycentric weights of the nodes 0..k-1
  std::vector<Gf16> weights_;
};

}  // namespace combicache
