#include <omp.h>

#include "combicache/combinatorics.hpp"
#include "combicache/errors.hpp"
#include "combicache/kernels.hpp"
#include "combicache/subsets.hpp"

namespace combicache::kernels {

int max_threads()
{
  return omp_get_max_threads();
}

void linear_combine_omp(std::span<const Gf16> coeff, std::span<const ByteView> in, std::span<Bytes> out)
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

  const auto rows = static_cast<std::int64_t>(out.size());
  const std::size_t cols = in.size();
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t j = 0; j < rows; ++j) {
    Bytes& dst = out[static_cast<std::size_t>(j)];
    dst.assign(len, 0);
    for (std::size_t i = 0; i < cols; ++i) {
      gf_mul_add(dst, in[i], coeff[static_cast<std::size_t>(j) * cols + i]);
    }
  }
}

std::vector<std::uint64_t> uncovered_cached_counts_omp(const CombinationNetwork& net, int q)
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
  const auto K = static_cast<std::size_t>(net.K());

  // Users touched by a collection are the union of its P_Y; everyone else
  // has no member of the collection inside their relay set. Count
  // non-covering collections overall and subtract per-user touches.
  std::uint64_t uncovered = 0;
  std::vector<std::uint64_t> touched(K, 0);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local_touched(K, 0);
    std::vector<std::uint64_t> stamp(K, 0);
    std::uint64_t local_uncovered = 0;
    std::uint64_t serial = 0;

#pragma omp for schedule(dynamic, 1)
    for (int first = 0; first <= kpp - q; ++first) {
      const std::uint32_t first_mask = subsets[static_cast<std::size_t>(first)].mask();
      const int tail_n = kpp - first - 1;
      for_each_combination(tail_n, q - 1, [&](std::span<const int> tail) {
        std::uint32_t u = first_mask;
        for (int t : tail) {
          u |= subsets[static_cast<std::size_t>(first + 1 + t)].mask();
        }
        if (u == full) {
          return true;
        }
        ++local_uncovered;
        ++serial;
        auto touch = [&](std::size_t idx) {
          for (UserId k : net.common_users_of_small_subset(idx)) {
            auto& s = stamp[static_cast<std::size_t>(k - 1)];
            if (s != serial) {
              s = serial;
              ++local_touched[static_cast<std::size_t>(k - 1)];
            }
          }
        };
        touch(static_cast<std::size_t>(first));
        for (int t : tail) {
          touch(static_cast<std::size_t>(first + 1 + t));
        }
        return true;
      });
    }

#pragma omp critical
    {
      uncovered += local_uncovered;
      for (std::size_t k = 0; k < K; ++k) {
        touched[k] += local_touched[k];
      }
    }
  }

  std::vector<std::uint64_t> counts(K);
  for (std::size_t k = 0; k < K; ++k) {
    counts[k] = uncovered - touched[k];
  }
  return counts;
}

}  // namespace combicache::kernels
