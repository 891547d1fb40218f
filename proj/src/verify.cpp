#include "combicache/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "combicache/errors.hpp"
#include "combicache/mds.hpp"

namespace combicache {

namespace {

std::uint64_t bytes_for(const Rational& load, std::uint64_t B)
{
  const Rational x = load * Rational(BigInt(B));
  if (denominator_of(x) != 1) {
    throw std::logic_error("load " + to_fraction_string(load) + " times B is not an integer");
  }
  return numerator_of(x).convert_to<std::uint64_t>();
}

ByteView piece_view(const Bytes& symbol, const PieceRef& p)
{
  const std::size_t len = symbol.size() / static_cast<std::size_t>(p.parts);
  return ByteView(symbol).subspan(static_cast<std::size_t>(p.part) * len, len);
}

}  // namespace

std::vector<Bytes> random_files(int N, std::uint64_t B, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::vector<Bytes> files(static_cast<std::size_t>(N), Bytes(B));
  for (auto& f : files) {
    for (std::size_t i = 0; i < f.size(); i += 8) {
      std::uint64_t w = rng();
      for (std::size_t b = i; b < std::min<std::size_t>(i + 8, f.size()); ++b) {
        f[b] = static_cast<std::uint8_t>(w & 0xFF);
        w >>= 8;
      }
    }
  }
  return files;
}

std::vector<Transmission> encode_messages(const DeliveryPlan& plan, const PlacementLayout& layout,
                                          const CodedLibrary& library, std::uint64_t B)
{
  (void)layout;
  std::vector<Transmission> out;
  out.reserve(plan.messages.size());
  for (std::size_t m = 0; m < plan.messages.size(); ++m) {
    const auto& msg = plan.messages[m];
    Transmission t{m, Bytes(bytes_for(msg.length, B), 0)};
    for (const auto& ts : msg.summands) {
      std::size_t offset = 0;
      for (const auto& p : ts.pieces) {
        const ByteView src = piece_view(library[static_cast<std::size_t>(p.file - 1)][p.symbol], p);
        kernels::xor_into(std::span<std::uint8_t>(t.payload).subspan(offset, src.size()), src);
        offset += src.size();
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

DecodeResult decode_user(const CombinationNetwork& net, const PlacementLayout& layout, const DeliveryPlan& plan,
                         UserId k, const UserCache& cache, std::span<const Transmission> heard, std::uint64_t B)
{
  DecodeResult res;
  const int file = plan.demand.of(k);
  const RelaySet hk = net.relays_of_user(k);
  const std::uint64_t sym_bytes = bytes_for(layout.piece_len, B);

  // symbol -> received parts
  std::map<std::size_t, std::map<int, Bytes>> got;
  std::map<std::size_t, int> parts_of;
  std::vector<bool> expected(layout.symbols.size(), false);
  for (const auto& msg : plan.messages) {
    for (const auto& ts : msg.summands) {
      if (ts.user == k) {
        for (const auto& p : ts.pieces) {
          expected[p.symbol] = true;
        }
      }
    }
  }

  for (const auto& t : heard) {
    if (t.message >= plan.messages.size()) {
      res.error = "transmission refers to unknown message";
      return res;
    }
    const auto& msg = plan.messages[t.message];
    if (!hk.contains(msg.relay) || !contains(msg.targets, k)) {
      continue;
    }
    if (t.payload.size() != bytes_for(msg.length, B)) {
      res.error = "transmission length does not match its header";
      return res;
    }
    Bytes buf = t.payload;
    const TSet* mine = nullptr;
    bool cancelled = true;
    for (const auto& ts : msg.summands) {
      if (ts.user == k) {
        mine = &ts;
        continue;
      }
      std::size_t offset = 0;
      for (const auto& p : ts.pieces) {
        const auto it = cache.find({p.file, p.symbol});
        if (it == cache.end()) {
          cancelled = false;
          break;
        }
        const ByteView src = piece_view(it->second, p);
        kernels::xor_into(std::span<std::uint8_t>(buf).subspan(offset, src.size()), src);
        offset += src.size();
      }
    }
    if (!mine || !cancelled) {
      continue;
    }
    std::size_t offset = 0;
    for (const auto& p : mine->pieces) {
      const std::size_t len = sym_bytes / static_cast<std::size_t>(p.parts);
      got[p.symbol][p.part] = Bytes(buf.begin() + static_cast<std::ptrdiff_t>(offset),
                                    buf.begin() + static_cast<std::ptrdiff_t>(offset + len));
      parts_of[p.symbol] = p.parts;
      offset += len;
    }
  }

  std::vector<std::pair<std::size_t, Bytes>> available;
  for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
    if (const auto it = cache.find({file, s}); it != cache.end()) {
      available.emplace_back(s, it->second);
      continue;
    }
    const auto g = got.find(s);
    if (g != got.end() && static_cast<int>(g->second.size()) == parts_of[s]) {
      Bytes whole;
      whole.reserve(sym_bytes);
      for (const auto& [part, bytes] : g->second) {
        whole.insert(whole.end(), bytes.begin(), bytes.end());
      }
      available.emplace_back(s, std::move(whole));
    } else if (expected[s] || !layout.mds) {
      res.missing.push_back(symbol_label(layout, s, file));
    }
  }

  std::vector<Bytes> source;
  if (layout.mds) {
    if (available.size() < layout.mds->k) {
      res.error = "have " + std::to_string(available.size()) + " of " + std::to_string(layout.mds->k) +
                  " MDS symbols";
      return res;
    }
    const MdsCode code(layout.mds->n, layout.mds->k);
    std::vector<std::pair<std::size_t, ByteView>> views;
    for (const auto& [s, bytes] : available) {
      views.emplace_back(s, bytes);
    }
    source = code.decode_serial(views);
  } else {
    if (!res.missing.empty()) {
      res.error = std::to_string(res.missing.size()) + " subfiles missing";
      return res;
    }
    for (auto& [s, bytes] : available) {
      source.push_back(std::move(bytes));
    }
  }

  Bytes out;
  out.reserve(B);
  for (const auto& piece : source) {
    out.insert(out.end(), piece.begin(), piece.end());
  }
  res.file = std::move(out);
  return res;
}

bool SimulationRun::all_recovered() const
{
  return std::all_of(users.begin(), users.end(), [](const UserOutcome& u) { return u.recovered; });
}

bool SimulationRun::accounting_exact() const
{
  return std::all_of(links.begin(), links.end(), [](const LinkBytes& l) { return l.matches_load; });
}

SimulationRun simulate(const CombinationNetwork& net, const PlacementLayout& layout, const DemandVector& d,
                       std::uint64_t B, std::uint64_t seed, const SimulateOptions& options)
{
  const std::uint64_t b0 = required_block_size(layout, net);
  if (B == 0 || B % b0 != 0) {
    throw ParameterError("B=" + std::to_string(B) + " is not a positive multiple of the block size " +
                         std::to_string(b0));
  }

  SimulationRun run;
  run.seed = seed;
  run.B = B;
  run.demand = d;
  run.files = random_files(layout.N, B, seed);

  const CodedLibrary library = code_files(layout, run.files);
  const CacheContent caches = place_bits(net, layout, library);
  const DeliveryPlan plan = build_delivery(net, layout, d);
  run.report = load_report(net, plan);
  run.srds_divergences = plan.srds_divergences;
  run.transmissions = encode_messages(plan, layout, library, B);

  if (options.tamper) {
    const auto [m, byte] = *options.tamper;
    if (m < run.transmissions.size() && byte < run.transmissions[m].payload.size()) {
      run.transmissions[m].payload[byte] ^= 0x01;
    }
  }

  std::vector<std::uint64_t> relay_bytes(static_cast<std::size_t>(net.H()), 0);
  std::map<std::pair<RelayId, UserId>, std::uint64_t> link_bytes;
  for (const auto& t : run.transmissions) {
    const auto& msg = plan.messages[t.message];
    relay_bytes[static_cast<std::size_t>(msg.relay - 1)] += t.payload.size();
    for (UserId k : msg.targets) {
      link_bytes[{msg.relay, k}] += t.payload.size();
    }
  }
  for (RelayId h = 1; h <= net.H(); ++h) {
    const std::uint64_t b = relay_bytes[static_cast<std::size_t>(h - 1)];
    run.links.push_back(LinkBytes{h, 0, b, b == bytes_for(run.report.relay_loads[static_cast<std::size_t>(h - 1)], B)});
  }
  for (const auto& l : run.report.link_loads) {
    const std::uint64_t b = link_bytes[{l.relay, l.user}];
    run.links.push_back(LinkBytes{l.relay, l.user, b, b == bytes_for(l.load, B)});
  }

  run.users.resize(static_cast<std::size_t>(net.K()));
  const int K = net.K();
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < K; ++i) {
    const UserId k = i + 1;
    UserOutcome& out = run.users[static_cast<std::size_t>(i)];
    out.user = k;
    try {
      const DecodeResult r =
          decode_user(net, layout, plan, k, caches.per_user[static_cast<std::size_t>(i)], run.transmissions, B);
      out.missing = r.missing;
      out.error = r.error;
      if (r.ok()) {
        out.recovered = *r.file == run.files[static_cast<std::size_t>(d.of(k) - 1)];
        if (!out.recovered) {
          out.error = "reconstructed bytes differ from the demanded file";
        }
      }
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  }
  return run;
}

}  // namespace combicache
