#include "combicache/placement.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "combicache/delivery.hpp"
#include "combicache/errors.hpp"
#include "combicache/mds.hpp"
#include "combicache/subsets.hpp"

namespace combicache {

const char* to_string(Scheme s)
{
  switch (s) {
    case Scheme::Man:
      return "man";
    case Scheme::AsymUncoded:
      return "asym";
    case Scheme::AsymCoded:
      return "coded";
    case Scheme::Improved:
      return "improved";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name)
{
  if (name == "man") {
    return Scheme::Man;
  }
  if (name == "asym") {
    return Scheme::AsymUncoded;
  }
  if (name == "coded") {
    return Scheme::AsymCoded;
  }
  if (name == "improved") {
    return Scheme::Improved;
  }
  throw ParameterError("unknown scheme '" + name + "' (expected man|asym|coded|improved)");
}

std::optional<std::size_t> PlacementLayout::find(const Collection& Q) const
{
  if (auto it = collection_index.find(Q); it != collection_index.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<std::size_t> PlacementLayout::cached_counts(int K) const
{
  std::vector<std::size_t> counts(static_cast<std::size_t>(K), 0);
  for (const auto& s : symbols) {
    for (UserId k : s.cached_by) {
      ++counts[static_cast<std::size_t>(k - 1)];
    }
  }
  return counts;
}

namespace {

void require_files(int N)
{
  if (N < 1) {
    throw ParameterError("N must be at least 1");
  }
}

int q_for_gain(const CombinationNetwork& net, int g)
{
  const int kp = net.K_prime();
  if (g < 2 || g > kp) {
    throw ParameterError("gain g=" + std::to_string(g) + " outside [2, K'=" + std::to_string(kp) + "]");
  }
  return kp - g + 1;
}

UserSet all_users_except(const CombinationNetwork& net, const UserSet& excluded)
{
  UserSet all(static_cast<std::size_t>(net.K()));
  std::iota(all.begin(), all.end(), 1);
  return set_difference(all, excluded);
}

/// [K] \ ∪_{Y∈Q} P_Y, from indices into small_subsets().
UserSet cached_by_collection(const CombinationNetwork& net, std::span<const int> idx)
{
  UserSet hit;
  for (int i : idx) {
    hit = set_union(hit, net.common_users_of_small_subset(static_cast<std::size_t>(i)));
  }
  return all_users_except(net, hit);
}

/// Fixes M from the per-user cached count, which must be the same for all.
void finish_memory(const CombinationNetwork& net, PlacementLayout& layout)
{
  const auto counts = layout.cached_counts(net.K());
  if (!counts.empty() && std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
    throw std::logic_error("placement gives users unequal memory");
  }
  const std::size_t per_user = counts.empty() ? 0 : counts.front();
  layout.M = Rational(layout.N) * Rational(static_cast<long long>(per_user)) * layout.piece_len;
}

PlacementLayout collection_layout(const CombinationNetwork& net, Scheme scheme, int N, int g, bool skip_covering)
{
  require_files(N);
  const int q = q_for_gain(net, g);
  const int kpp = net.K_double_prime();
  const std::uint64_t cap = enumeration_cap();
  if (binom(kpp, q) > cap) {
    throw EnumerationCapError("C(K''=" + std::to_string(kpp) + ", q=" + std::to_string(q) +
                              ") collections exceed enumeration cap " + std::to_string(cap));
  }

  PlacementLayout layout;
  layout.scheme = scheme;
  layout.N = N;
  layout.g = g;
  layout.q = q;

  const std::uint32_t full = net.all_relays().mask();
  std::vector<int> idx;
  for_each_combination(kpp, q, [&](std::span<const int> c) {
    std::uint32_t u = 0;
    for (int i : c) {
      u |= net.small_subsets()[static_cast<std::size_t>(i)].mask();
    }
    if (skip_covering && u == full) {
      return true;
    }
    idx.assign(c.begin(), c.end());
    Collection Q = collection_from_indices(net, idx);
    layout.collection_index.emplace(Q, layout.symbols.size());
    layout.symbols.push_back(LayoutSymbol{std::move(Q), cached_by_collection(net, c)});
    return true;
  });

  const BigInt delivered = BigInt(net.r()) * binom(net.K_prime() - 1, q - 1);
  const BigInt cached = skip_covering ? lemma1_G(net.H(), net.r(), q) : binom(kpp - net.r(), q);
  const BigInt k = cached + delivered;
  layout.subpacketization = k.convert_to<std::size_t>();
  layout.mds = MdsParams{layout.symbols.size(), layout.subpacketization};
  layout.piece_len = Rational(1, static_cast<long long>(layout.subpacketization));
  finish_memory(net, layout);

  const auto counts = layout.cached_counts(net.K());
  if (!counts.empty() && BigInt(counts.front()) != cached) {
    throw std::logic_error("cached symbol count disagrees with the class-1 count");
  }
  return layout;
}

}  // namespace

PlacementLayout man_placement(const CombinationNetwork& net, int N, int t)
{
  require_files(N);
  const int K = net.K();
  if (t < 0 || t > K) {
    throw ParameterError("t=" + std::to_string(t) + " outside [0, K=" + std::to_string(K) + "]");
  }
  const std::uint64_t cap = enumeration_cap();
  if (binom(K, t) > cap) {
    throw EnumerationCapError("C(K, t) subfiles exceed enumeration cap " + std::to_string(cap));
  }
  PlacementLayout layout;
  layout.scheme = Scheme::Man;
  layout.N = N;
  layout.t = t;
  for_each_combination(K, t, [&](std::span<const int> c) {
    UserSet W;
    for (int i : c) {
      W.push_back(i + 1);
    }
    layout.symbols.push_back(LayoutSymbol{W, W});
    return true;
  });
  layout.subpacketization = layout.symbols.size();
  layout.piece_len = Rational(1, static_cast<long long>(layout.subpacketization));
  finish_memory(net, layout);
  return layout;
}

PlacementLayout asym_uncoded_placement(const CombinationNetwork& net, int N)
{
  require_files(N);
  PlacementLayout layout;
  layout.scheme = Scheme::AsymUncoded;
  layout.N = N;
  layout.g = net.K_prime();
  layout.q = 1;
  for (std::size_t i = 0; i < net.small_subsets().size(); ++i) {
    Collection Q{{net.small_subsets()[i]}};
    layout.collection_index.emplace(Q, layout.symbols.size());
    layout.symbols.push_back(LayoutSymbol{std::move(Q), all_users_except(net, net.common_users_of_small_subset(i))});
  }
  layout.subpacketization = layout.symbols.size();
  layout.piece_len = Rational(1, static_cast<long long>(layout.subpacketization));
  finish_memory(net, layout);
  return layout;
}

PlacementLayout asym_coded_placement(const CombinationNetwork& net, int N, int g)
{
  return collection_layout(net, Scheme::AsymCoded, N, g, false);
}

PlacementLayout improved_placement(const CombinationNetwork& net, int N, int g)
{
  return collection_layout(net, Scheme::Improved, N, g, true);
}

PlacementLayout make_placement(const CombinationNetwork& net, Scheme scheme, int N, std::optional<int> param)
{
  switch (scheme) {
    case Scheme::Man:
      if (!param) {
        throw ParameterError("MAN placement needs --t");
      }
      return man_placement(net, N, *param);
    case Scheme::AsymUncoded:
      return asym_uncoded_placement(net, N);
    case Scheme::AsymCoded:
      if (!param) {
        throw ParameterError("coded placement needs --g");
      }
      return asym_coded_placement(net, N, *param);
    case Scheme::Improved:
      if (!param) {
        throw ParameterError("improved placement needs --g");
      }
      return improved_placement(net, N, *param);
  }
  throw ParameterError("unknown scheme");
}

CodedLibrary code_files(const PlacementLayout& layout, const std::vector<Bytes>& files)
{
  if (files.size() != static_cast<std::size_t>(layout.N)) {
    throw ParameterError("expected " + std::to_string(layout.N) + " files, got " + std::to_string(files.size()));
  }
  const std::size_t B = files.empty() ? 0 : files.front().size();
  for (const auto& f : files) {
    if (f.size() != B) {
      throw ParameterError("files must all have the same length");
    }
  }
  if (layout.subpacketization == 0 || B % layout.subpacketization != 0) {
    throw ParameterError("file size " + std::to_string(B) + " is not divisible by the subpacketization " +
                         std::to_string(layout.subpacketization));
  }
  const std::size_t piece = B / layout.subpacketization;

  std::optional<MdsCode> code;
  if (layout.mds) {
    code.emplace(layout.mds->n, layout.mds->k);
  }

  CodedLibrary lib;
  lib.reserve(files.size());
  for (const auto& f : files) {
    std::vector<ByteView> pieces;
    pieces.reserve(layout.subpacketization);
    for (std::size_t i = 0; i < layout.subpacketization; ++i) {
      pieces.emplace_back(f.data() + i * piece, piece);
    }
    if (code) {
      lib.push_back(code->encode(pieces));
    } else {
      std::vector<Bytes> symbols;
      symbols.reserve(pieces.size());
      for (auto p : pieces) {
        symbols.emplace_back(p.begin(), p.end());
      }
      lib.push_back(std::move(symbols));
    }
  }
  return lib;
}

std::uint64_t CacheContent::bytes_of(UserId k) const
{
  std::uint64_t total = 0;
  for (const auto& [key, bytes] : per_user[static_cast<std::size_t>(k - 1)]) {
    total += bytes.size();
  }
  return total;
}

CacheContent place_bits(const CombinationNetwork& net, const PlacementLayout& layout, const CodedLibrary& library)
{
  CacheContent cache;
  cache.per_user.resize(static_cast<std::size_t>(net.K()));
  for (std::size_t file = 0; file < library.size(); ++file) {
    for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
      for (UserId k : layout.symbols[s].cached_by) {
        cache.per_user[static_cast<std::size_t>(k - 1)].emplace(std::pair{static_cast<int>(file + 1), s},
                                                                library[file][s]);
      }
    }
  }
  return cache;
}

CacheContent place_bits(const CombinationNetwork& net, const PlacementLayout& layout, const std::vector<Bytes>& files)
{
  return place_bits(net, layout, code_files(layout, files));
}

std::uint64_t required_block_size(const PlacementLayout& layout, const CombinationNetwork& net)
{
  constexpr std::uint64_t kFieldSymbolBytes = 2;
  std::uint64_t split = 1;
  if (layout.scheme == Scheme::Man) {
    for (const auto& s : layout.symbols) {
      const auto& W = std::get<UserSet>(s.key);
      for (UserId k = 1; k <= net.K(); ++k) {
        if (!contains(W, k)) {
          split = std::lcm(split, static_cast<std::uint64_t>(srds_best_relays(net, k, W).size()));
        }
      }
    }
  }
  const BigInt b0 = BigInt(layout.subpacketization) * split * kFieldSymbolBytes;
  if (b0 > std::numeric_limits<std::uint64_t>::max()) {
    throw ParameterError("required block size does not fit in 64 bits");
  }
  return b0.convert_to<std::uint64_t>();
}

BaselineMemory zewail_min_memory(const CombinationNetwork& net, int N, int g)
{
  if (g < 2 || g > net.K_prime()) {
    throw ParameterError("gain g outside [2, K']");
  }
  BaselineMemory out;
  out.M = Rational(static_cast<long long>(net.H()) * (g - 1) * N, static_cast<long long>(net.r()) * net.K());
  out.feasible = out.M <= Rational(N);
  return out;
}

namespace {

std::string users_label(const UserSet& s)
{
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << (i ? "," : "") << s[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

std::string key_label(const SymbolKey& key)
{
  if (const auto* W = std::get_if<UserSet>(&key)) {
    return "W=" + users_label(*W);
  }
  const auto& Q = std::get<Collection>(key);
  std::string out = "Q={";
  for (std::size_t i = 0; i < Q.subsets.size(); ++i) {
    out += (i ? "," : "") + users_label(Q.subsets[i].members());
  }
  return out + "}";
}

std::string symbol_label(const PlacementLayout& layout, std::size_t symbol, int file)
{
  return "f_{" + std::to_string(file) + "," + users_label(layout.symbols[symbol].cached_by) + "}[" +
         key_label(layout.symbols[symbol].key) + "]";
}

}  // namespace combicache
