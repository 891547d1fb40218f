#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "combicache/delivery.hpp"
#include "combicache/placement.hpp"

namespace combicache {

inline constexpr const char* kFileRng = "mt19937_64";

/// N files of B bytes each, filled from mt19937_64(seed) eight bytes per draw
/// (little-endian).
std::vector<Bytes> random_files(int N, std::uint64_t B, std::uint64_t seed);

/// Payload of plan.messages[message] as sent by the server.
struct Transmission {
  std::size_t message = 0;
  Bytes payload;
};

/// XOR of every summand's pieces, zero-extended to the longest summand.
std::vector<Transmission> encode_messages(const DeliveryPlan& plan, const PlacementLayout& layout,
                                          const CodedLibrary& library, std::uint64_t B);

struct DecodeResult {
  std::optional<Bytes> file;
  std::vector<std::string> missing;  // labels of unrecovered symbols
  std::string error;

  bool ok() const { return file.has_value(); }
};

/// Reconstructs F_{d_k} from the user's cache and the transmissions it heard.
/// Transmissions whose target set lacks k are ignored.
DecodeResult decode_user(const CombinationNetwork& net, const PlacementLayout& layout, const DeliveryPlan& plan,
                         UserId k, const UserCache& cache, std::span<const Transmission> heard, std::uint64_t B);

struct UserOutcome {
  UserId user = 0;
  bool recovered = false;
  std::vector<std::string> missing;
  std::string error;
};

struct LinkBytes {
  RelayId relay = 0;
  UserId user = 0;  // 0 for the server -> relay link
  std::uint64_t bytes = 0;
  bool matches_load = false;  // bytes == load * B
};

struct SimulationRun {
  std::uint64_t seed = 0;
  std::string rng = kFileRng;
  std::uint64_t B = 0;
  DemandVector demand;
  LoadReport report;
  std::uint64_t srds_divergences = 0;
  std::vector<LinkBytes> links;
  std::vector<UserOutcome> users;
  std::vector<Transmission> transmissions;
  std::vector<Bytes> files;

  bool all_recovered() const;
  bool accounting_exact() const;
};

struct SimulateOptions {
  /// Flip the low bit of byte `second` of transmission `first` before decoding.
  std::optional<std::pair<std::size_t, std::size_t>> tamper;
};

/// Throws ParameterError unless B is a positive multiple of required_block_size.
SimulationRun simulate(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d,
                       std::uint64_t B, std::uint64_t seed, const SimulateOptions& options = {});

}  // namespace combicache
