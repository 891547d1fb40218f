#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "combicache/combinatorics.hpp"
#include "combicache/kernels.hpp"
#include "combicache/rational.hpp"
#include "combicache/topology.hpp"

namespace combicache {

enum class Scheme {
  Man,          // symmetric uncoded placement, one subfile per t-subset of users
  AsymUncoded,  // one subfile per (r-1)-subset of relays, gain K'
  AsymCoded,    // MDS-precoded, one symbol per q-collection, gain g
  Improved,     // AsymCoded without collections covering every relay
};

const char* to_string(Scheme s);
/// Accepts "man", "asym", "coded", "improved". Throws ParameterError.
Scheme parse_scheme(const std::string& name);

/// A subfile is keyed by its user set W (MAN); every asymmetric symbol is
/// keyed by its collection, even when two collections share a cached-by set.
using SymbolKey = std::variant<UserSet, Collection>;

struct LayoutSymbol {
  SymbolKey key;
  UserSet cached_by;
};

struct MdsParams {
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Which symbols of every file exist and who caches them. The same symbol
/// template applies to each of the N files.
struct PlacementLayout {
  Scheme scheme = Scheme::Man;
  int N = 0;
  std::optional<int> g;
  std::optional<int> t;
  std::optional<int> q;
  std::size_t subpacketization = 0;  // source pieces per file
  std::optional<MdsParams> mds;
  std::vector<LayoutSymbol> symbols;  // index = coded symbol index
  Rational piece_len;                 // size of one symbol, in units of B
  Rational M;                         // memory per user, in files

  /// Symbol index for an asymmetric collection key.
  std::optional<std::size_t> find(const Collection& Q) const;
  /// Number of symbols (per file) cached by each user, index k-1.
  std::vector<std::size_t> cached_counts(int K) const;

  std::map<Collection, std::size_t> collection_index;
};

PlacementLayout man_placement(const CombinationNetwork& net, int N, int t);
PlacementLayout asym_uncoded_placement(const CombinationNetwork& net, int N);
PlacementLayout asym_coded_placement(const CombinationNetwork& net, int N, int g);
PlacementLayout improved_placement(const CombinationNetwork& net, int N, int g);

/// Dispatch by scheme; `param` is t for MAN and g for the coded schemes
/// (ignored for AsymUncoded).
PlacementLayout make_placement(const CombinationNetwork& net, Scheme scheme, int N, std::optional<int> param);

/// Every (file, symbol) as encoded by the server: [file][symbol].
using CodedLibrary = std::vector<std::vector<Bytes>>;

/// Splits each file into subpacketization pieces and MDS-encodes when the
/// layout is coded. Throws ParameterError when the file size does not
/// divide.
CodedLibrary code_files(const PlacementLayout& layout, const std::vector<Bytes>& files);

/// One user's cache: (file, symbol index) -> bytes.
using UserCache = std::map<std::pair<int, std::size_t>, Bytes>;

struct CacheContent {
  std::vector<UserCache> per_user;  // index k-1
  std::uint64_t bytes_of(UserId k) const;
};

CacheContent place_bits(const CombinationNetwork& net, const PlacementLayout& layout, const CodedLibrary& library);
CacheContent place_bits(const CombinationNetwork& net, const PlacementLayout& layout, const std::vector<Bytes>& files);

/// Smallest B0 such that every B = m * B0 splits evenly through placement,
/// SRDS piece splitting, and the 2-byte field symbols.
std::uint64_t required_block_size(const PlacementLayout& layout, const CombinationNetwork& net);

/// Memory the MDS-per-relay baseline needs for gain g: H(g-1)N/(rK).
struct BaselineMemory {
  Rational M;
  bool feasible = true;  // false when M > N
};
BaselineMemory zewail_min_memory(const CombinationNetwork& net, int N, int g);

/// Human-readable key: "W={..}" or "Q={{..},{..}}".
std::string key_label(const SymbolKey& key);
std::string symbol_label(const PlacementLayout& layout, std::size_t symbol, int file);

}  // namespace combicache
