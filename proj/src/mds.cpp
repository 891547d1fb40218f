#include "combicache/mds.hpp"

#include <algorithm>
#include <string>

#include "combicache/errors.hpp"

namespace combicache {

namespace {

Gf16 node(std::size_t i) { return Gf16(static_cast<std::uint16_t>(i)); }

// Rows of parity coefficients materialised at a time during encoding.
constexpr std::size_t kEncodeBlockRows = 512;

std::size_t common_length(std::span<const ByteView> symbols)
{
  const std::size_t len = symbols.empty() ? 0 : symbols.front().size();
  for (const auto& s : symbols) {
    if (s.size() != len) {
      throw CodecError("symbol length mismatch");
    }
  }
  if ((len % 2) != 0) {
    throw CodecError("symbol length " + std::to_string(len) + " is not a multiple of 2 bytes");
  }
  return len;
}

}  // namespace

MdsCode::MdsCode(std::size_t n, std::size_t k) : n_(n), k_(k)
{
  if (k == 0 || k > n || n > kMaxLength) {
    throw CodecError("invalid MDS parameters (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                     "): need 1 <= k <= n <= 65536");
  }
  weights_.resize(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    Gf16 prod(1);
    for (std::size_t m = 0; m < k_; ++m) {
      if (m != i) {
        prod *= node(i) - node(m);
      }
    }
    weights_[i] = prod.inverse();
  }
}

Gf16 MdsCode::generator(std::size_t i, std::size_t j) const
{
  if (i >= k_ || j >= n_) {
    throw CodecError("generator index out of range");
  }
  if (j < k_) {
    return Gf16(i == j ? 1 : 0);
  }
  Gf16 ell(1);
  for (std::size_t m = 0; m < k_; ++m) {
    ell *= node(j) - node(m);
  }
  return ell * weights_[i] / (node(j) - node(i));
}

std::vector<Bytes> MdsCode::encode(std::span<const ByteView> source) const
{
  return encode_impl(source, true);
}

std::vector<Bytes> MdsCode::encode_serial(std::span<const ByteView> source) const
{
  return encode_impl(source, false);
}

std::vector<Bytes> MdsCode::encode_impl(std::span<const ByteView> source, bool parallel) const
{
  if (source.size() != k_) {
    throw CodecError("encode: expected " + std::to_string(k_) + " source symbols, got " +
                     std::to_string(source.size()));
  }
  common_length(source);

  std::vector<Bytes> coded(n_);
  for (std::size_t i = 0; i < k_; ++i) {
    coded[i].assign(source[i].begin(), source[i].end());
  }

  std::vector<Gf16> coeff;
  for (std::size_t block = k_; block < n_; block += kEncodeBlockRows) {
    const std::size_t rows = std::min(kEncodeBlockRows, n_ - block);
    coeff.assign(rows * k_, Gf16());
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t j = block + r;
      Gf16 ell(1);
      for (std::size_t m = 0; m < k_; ++m) {
        ell *= node(j) - node(m);
      }
      for (std::size_t i = 0; i < k_; ++i) {
        coeff[r * k_ + i] = ell * weights_[i] / (node(j) - node(i));
      }
    }
    std::span<Bytes> out(coded.data() + block, rows);
    if (parallel) {
      kernels::linear_combine_omp(coeff, source, out);
    } else {
      kernels::linear_combine_serial(coeff, source, out);
    }
  }
  return coded;
}

std::vector<Bytes> MdsCode::decode(std::span<const std::pair<std::size_t, ByteView>> available) const
{
  return decode_impl(available, true);
}

std::vector<Bytes> MdsCode::decode_serial(std::span<const std::pair<std::size_t, ByteView>> available) const
{
  return decode_impl(available, false);
}

std::vector<Bytes> MdsCode::decode_impl(std::span<const std::pair<std::size_t, ByteView>> available,
                                        bool parallel) const
{
  std::vector<std::size_t> indices;
  indices.reserve(available.size());
  for (const auto& [idx, sym] : available) {
    if (idx >= n_) {
      throw CodecError("decode: symbol index " + std::to_string(idx) + " out of range");
    }
    indices.push_back(idx);
  }
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw CodecError("decode: duplicate symbol indices");
  }
  if (available.size() < k_) {
    throw CodecError("decode: need " + std::to_string(k_) + " symbols, got " +
                     std::to_string(available.size()));
  }

  const auto used = available.first(k_);
  std::vector<ByteView> views;
  views.reserve(k_);
  for (const auto& [idx, sym] : used) {
    views.push_back(sym);
  }
  common_length(views);

  std::vector<Bytes> source(k_);
  std::vector<std::size_t> missing;
  std::vector<bool> have(k_, false);
  for (const auto& [idx, sym] : used) {
    if (idx < k_) {
      source[idx].assign(sym.begin(), sym.end());
      have[idx] = true;
    }
  }
  for (std::size_t i = 0; i < k_; ++i) {
    if (!have[i]) {
      missing.push_back(i);
    }
  }
  if (missing.empty()) {
    return source;
  }

  // Barycentric weights of the received nodes.
  std::vector<Gf16> w(k_);
  for (std::size_t a = 0; a < k_; ++a) {
    Gf16 prod(1);
    for (std::size_t b = 0; b < k_; ++b) {
      if (a != b) {
        prod *= node(used[a].first) - node(used[b].first);
      }
    }
    w[a] = prod.inverse();
  }

  std::vector<Gf16> coeff(missing.size() * k_);
  for (std::size_t r = 0; r < missing.size(); ++r) {
    const Gf16 x = node(missing[r]);
    Gf16 ell(1);
    for (std::size_t a = 0; a < k_; ++a) {
      ell *= x - node(used[a].first);
    }
    for (std::size_t a = 0; a < k_; ++a) {
      coeff[r * k_ + a] = ell * w[a] / (x - node(used[a].first));
    }
  }

  std::vector<Bytes> recovered(missing.size());
  if (parallel) {
    kernels::linear_combine_omp(coeff, views, recovered);
  } else {
    kernels::linear_combine_serial(coeff, views, recovered);
  }
  for (std::size_t r = 0; r < missing.size(); ++r) {
    source[missing[r]] = std::move(recovered[r]);
  }
  return source;
}

}  // namespace combicache
