#include "combicache/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "combicache/bounds.hpp"
#include "combicache/combinatorics.hpp"
#include "combicache/delivery.hpp"
#include "combicache/errors.hpp"
#include "combicache/fixtures.hpp"
#include "combicache/mds.hpp"
#include "combicache/placement.hpp"
#include "combicache/verify.hpp"

namespace combicache::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json big(const BigInt& x)
{
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

json rat(const Rational& x)
{
  return json{{"num", big(numerator_of(x))}, {"den", big(denominator_of(x))}, {"decimal", to_decimal_string(x)}};
}

std::string rat_text(const Rational& x)
{
  return to_fraction_string(x) + " (" + to_decimal_string(x) + ")";
}

std::string set_text(const std::vector<int>& v)
{
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s + "}";
}

std::string tuple_text(const std::vector<int>& v)
{
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s + ")";
}

std::string hex(ByteView bytes)
{
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (auto b : bytes) {
    os << std::setw(2) << static_cast<int>(b);
  }
  return os.str();
}

/// Options shared by every placement-driven subcommand.
struct NetworkArgs {
  int H = 0;
  int r = 0;
  int N = 0;
  std::string scheme = "coded";
  std::optional<int> g;
  std::optional<int> t;

  void add_network(CLI::App* app)
  {
    app->add_option("--H", H, "number of relays")->required();
    app->add_option("--r", r, "relays per user")->required();
  }

  void add_placement(CLI::App* app)
  {
    add_network(app);
    app->add_option("--N", N, "number of files")->required();
    app->add_option("--scheme", scheme, "man | asym | coded | improved")->capture_default_str();
    app->add_option("--g", g, "coded caching gain for coded/improved");
    app->add_option("--t", t, "MAN parameter: users per subfile");
  }

  CombinationNetwork network() const { return CombinationNetwork::build(H, r); }

  PlacementLayout layout(const CombinationNetwork& net) const
  {
    const Scheme s = parse_scheme(scheme);
    std::optional<int> param;
    if (s == Scheme::Man) {
      if (g) {
        throw UsageError("--g does not apply to the man scheme; use --t");
      }
      param = t;
      if (!param) {
        throw UsageError("the man scheme needs --t");
      }
    } else if (s == Scheme::AsymUncoded) {
      if (t || (g && *g != net.K_prime())) {
        throw UsageError("the asym scheme has fixed gain K'=" + std::to_string(net.K_prime()));
      }
    } else {
      if (t) {
        throw UsageError("--t applies only to the man scheme");
      }
      param = g;
      if (!param) {
        throw UsageError("the " + scheme + " scheme needs --g");
      }
    }
    return make_placement(net, s, N, param);
  }

  std::string config_text() const
  {
    std::string s = "H=" + std::to_string(H) + " r=" + std::to_string(r);
    if (N) {
      s += " N=" + std::to_string(N) + " scheme=" + scheme;
    }
    if (g) {
      s += " g=" + std::to_string(*g);
    }
    if (t) {
      s += " t=" + std::to_string(*t);
    }
    return s;
  }

  json config_json() const
  {
    json j{{"H", H}, {"r", r}};
    if (N) {
      j["N"] = N;
      j["scheme"] = scheme;
    }
    j["g"] = g ? json(*g) : json(nullptr);
    j["t"] = t ? json(*t) : json(nullptr);
    return j;
  }
};

DemandPolicy parse_policy(const std::string& text)
{
  if (text == "distinct") {
    return DistinctDemand{};
  }
  if (text == "all") {
    return AllDemands{};
  }
  if (text.rfind("sample:", 0) == 0) {
    const auto colon = text.find(':', 7);
    if (colon != std::string::npos) {
      try {
        std::size_t a = 0;
        std::size_t b = 0;
        const std::string n_str = text.substr(7, colon - 7);
        const std::string s_str = text.substr(colon + 1);
        const auto n = std::stoull(n_str, &a);
        const auto seed = std::stoull(s_str, &b);
        if (a == n_str.size() && b == s_str.size() && n > 0) {
          return SampledDemands{n, seed};
        }
      } catch (const std::exception&) {
      }
    }
  }
  throw UsageError("--demand must be distinct, all or sample:<n>:<seed>");
}

DemandVector parse_demand(const std::string& text, int K, int N)
{
  if (text == "distinct") {
    return distinct_demand(K, N);
  }
  DemandVector d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      d.d.push_back(std::stoi(item, &used));
      if (used != item.size()) {
        throw UsageError("bad demand entry '" + item + "'");
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad demand entry '" + item + "'");
    }
  }
  validate_demand(d, K, N);
  return d;
}

// ---------------------------------------------------------------- topology

int cmd_topology(const NetworkArgs& a, bool as_json, std::ostream& out)
{
  const auto net = a.network();
  if (as_json) {
    json users = json::array();
    for (UserId k = 1; k <= net.K(); ++k) {
      users.push_back(net.relays_of_user(k).members());
    }
    json relays = json::array();
    for (RelayId h = 1; h <= net.H(); ++h) {
      relays.push_back(net.users_of_relay(h));
    }
    out << json{{"H", net.H()},
                {"r", net.r()},
                {"K", net.K()},
                {"K_prime", net.K_prime()},
                {"K_double_prime", net.K_double_prime()},
                {"users", users},
                {"relays", relays}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "# topology " << a.config_text() << '\n';
  out << "K=" << net.K() << " K'=" << net.K_prime() << " K''=" << net.K_double_prime() << '\n';
  out << "users (k: H_k)\n";
  for (UserId k = 1; k <= net.K(); ++k) {
    out << "  " << k << ": " << set_text(net.relays_of_user(k).members()) << '\n';
  }
  out << "relays (h: U_h)\n";
  for (RelayId h = 1; h <= net.H(); ++h) {
    out << "  " << h << ": " << set_text(net.users_of_relay(h)) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- place

constexpr std::size_t kTextSymbolLimit = 200;
constexpr std::size_t kGeneratorDumpLimit = 1U << 16;

void dump_generator(const PlacementLayout& layout, std::ostream& out)
{
  if (!layout.mds) {
    out << "generator: none (uncoded layout)\n";
    return;
  }
  const MdsCode code(layout.mds->n, layout.mds->k);
  if (code.n() * code.k() > kGeneratorDumpLimit) {
    throw UsageError("generator matrix too large to dump (" + std::to_string(code.k()) + "x" +
                     std::to_string(code.n()) + ")");
  }
  out << "generator " << code.k() << "x" << code.n() << " over GF(2^16), hex\n";
  out << std::hex << std::setfill('0');
  for (std::size_t i = 0; i < code.k(); ++i) {
    for (std::size_t j = 0; j < code.n(); ++j) {
      out << (j ? " " : "") << std::setw(4) << code.generator(i, j).value();
    }
    out << '\n';
  }
  out << std::dec << std::setfill(' ');
}

int cmd_place(const NetworkArgs& a, bool as_json, bool debug_mds, std::ostream& out, std::ostream& err)
{
  const auto net = a.network();
  const auto layout = a.layout(net);
  const std::uint64_t b0 = required_block_size(layout, net);
  if (as_json) {
    json symbols = json::array();
    for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
      symbols.push_back(json{{"index", s}, {"key", key_label(layout.symbols[s].key)}, {"cached_by", layout.symbols[s].cached_by}});
    }
    json j{{"config", a.config_json()},
           {"scheme", to_string(layout.scheme)},
           {"g", layout.g ? json(*layout.g) : json(nullptr)},
           {"t", layout.t ? json(*layout.t) : json(nullptr)},
           {"q", layout.q ? json(*layout.q) : json(nullptr)},
           {"subpacketization", layout.subpacketization},
           {"mds", layout.mds ? json{{"n", layout.mds->n}, {"k", layout.mds->k}} : json(nullptr)},
           {"M", rat(layout.M)},
           {"symbol_length", rat(layout.piece_len)},
           {"block_size", b0},
           {"symbols", symbols}};
    out << j.dump(2) << '\n';
  } else {
    out << "# place " << a.config_text() << '\n';
    out << "scheme " << to_string(layout.scheme) << '\n';
    if (layout.g) {
      out << "g " << *layout.g << '\n';
    }
    if (layout.q) {
      out << "q " << *layout.q << '\n';
    }
    if (layout.t) {
      out << "t " << *layout.t << '\n';
    }
    out << "subpacketization " << layout.subpacketization << '\n';
    if (layout.mds) {
      out << "mds n=" << layout.mds->n << " k=" << layout.mds->k << '\n';
    } else {
      out << "mds none\n";
    }
    out << "M " << rat_text(layout.M) << '\n';
    out << "symbol_length " << to_fraction_string(layout.piece_len) << " B\n";
    out << "block_size " << b0 << '\n';
    out << "symbols " << layout.symbols.size() << '\n';
    if (layout.symbols.size() <= kTextSymbolLimit) {
      for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
        out << "  " << s << ' ' << key_label(layout.symbols[s].key) << " cached_by="
            << set_text(layout.symbols[s].cached_by) << '\n';
      }
    } else {
      out << "  (listing omitted, use --json)\n";
    }
  }
  if (debug_mds) {
    dump_generator(layout, as_json ? err : out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- deliver

std::string policy_text(const DemandPolicy& p)
{
  if (std::holds_alternative<AllDemands>(p)) {
    return "all";
  }
  if (std::holds_alternative<DistinctDemand>(p)) {
    return "distinct";
  }
  const auto& s = std::get<SampledDemands>(p);
  return "sample:" + std::to_string(s.count) + ":" + std::to_string(s.seed);
}

int cmd_deliver(const NetworkArgs& a, const std::string& demand, bool serial, bool as_json, std::ostream& out)
{
  const auto net = a.network();
  const auto layout = a.layout(net);
  const DemandPolicy policy = parse_policy(demand);
  const WorstCase wc = worst_case_load(net, layout, policy, serial ? Execution::Serial : Execution::Parallel);
  const DeliveryPlan plan = build_delivery(net, layout, wc.demand);

  std::optional<Rational> formula;
  bool exact_regime = false;
  if (layout.g) {
    formula = Rational(net.K(), net.H()) * (Rational(1) - layout.M / layout.N) / *layout.g;
    exact_regime = *layout.g > net.K_prime() - (net.H() - net.r() + 1) + 1;
  }
  const bool mismatch = formula && *formula != wc.report.max_link_load;
  const bool excess = formula && wc.report.max_link_load > *formula;
  // Inside the regime where SRDS and the construction agree the load must
  // match exactly; elsewhere a mismatch is only reported.
  const int code = (mismatch && exact_regime) ? kExitFailure : kExitOk;

  if (as_json) {
    json rh = json::array();
    for (const auto& x : wc.report.relay_loads) {
      rh.push_back(rat(x));
    }
    json rhk = json::array();
    for (const auto& l : wc.report.link_loads) {
      rhk.push_back(json{{"relay", l.relay}, {"user", l.user}, {"load", rat(l.load)}});
    }
    json cfg = a.config_json();
    cfg["demand"] = policy_text(policy);
    json j{{"config", cfg},
           {"evaluated", wc.evaluated},
           {"worst_demand", wc.demand.d},
           {"messages", plan.messages.size()},
           {"R_h", rh},
           {"R_hk", rhk},
           {"max", rat(wc.report.max_link_load)},
           {"gain", wc.report.measured_gain ? rat(*wc.report.measured_gain) : json(nullptr)},
           {"formula_R", formula ? rat(*formula) : json(nullptr)},
           {"exact_regime", exact_regime},
           {"exceeds_formula", excess},
           {"srds_divergences", plan.srds_divergences}};
    out << j.dump(2) << '\n';
    return code;
  }

  out << "# deliver " << a.config_text() << " demand=" << policy_text(policy) << '\n';
  out << "evaluated " << wc.evaluated << '\n';
  out << "worst_demand " << tuple_text(wc.demand.d) << '\n';
  out << "messages " << plan.messages.size() << '\n';
  for (std::size_t h = 0; h < wc.report.relay_loads.size(); ++h) {
    out << "R_" << (h + 1) << " " << to_fraction_string(wc.report.relay_loads[h]) << '\n';
  }
  for (const auto& l : wc.report.link_loads) {
    out << "R_" << l.relay << "->" << l.user << " " << to_fraction_string(l.load) << '\n';
  }
  out << "max " << rat_text(wc.report.max_link_load) << '\n';
  out << "gain " << (wc.report.measured_gain ? rat_text(*wc.report.measured_gain) : "n/a") << '\n';
  if (formula) {
    out << "formula_R " << rat_text(*formula) << '\n';
    out << "regime " << (exact_regime ? "exact" : "open") << '\n';
    out << "srds_divergences " << plan.srds_divergences << '\n';
    if (excess) {
      out << "WARNING measured load exceeds the formula value\n";
    } else if (mismatch) {
      out << "NOTE measured load differs from the formula value\n";
    }
  }
  return code;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const NetworkArgs& a, std::optional<std::uint64_t> B_opt, std::uint64_t seed, const std::string& demand,
               const std::string& report, bool dump_bytes, bool debug_mds, std::ostream& out,
               std::ostream& err)
{
  if (report != "text" && report != "json") {
    throw UsageError("--report must be text or json");
  }
  const auto net = a.network();
  const auto layout = a.layout(net);
  const DemandVector d = parse_demand(demand, net.K(), layout.N);
  const std::uint64_t B = B_opt.value_or(required_block_size(layout, net));
  const SimulationRun run = simulate(net, layout, d, B, seed);
  const bool ok = run.all_recovered() && run.accounting_exact();

  if (report == "json") {
    json cfg = a.config_json();
    cfg["B"] = B;
    cfg["seed"] = seed;
    json links = json::array();
    for (const auto& l : run.links) {
      links.push_back(json{{"relay", l.relay}, {"user", l.user == 0 ? json(nullptr) : json(l.user)},
                           {"bytes", l.bytes}, {"matches_load", l.matches_load}});
    }
    json users = json::array();
    for (const auto& u : run.users) {
      users.push_back(json{{"user", u.user}, {"recovered", u.recovered}, {"missing", u.missing}, {"error", u.error}});
    }
    json tx = json::array();
    for (const auto& t : run.transmissions) {
      json e{{"message", t.message}, {"bytes", t.payload.size()}};
      if (dump_bytes) {
        e["payload"] = hex(t.payload);
      }
      tx.push_back(e);
    }
    json j{{"config", cfg},
           {"seed", run.seed},
           {"rng", run.rng},
           {"B", run.B},
           {"demand", run.demand.d},
           {"max_link_load", rat(run.report.max_link_load)},
           {"srds_divergences", run.srds_divergences},
           {"links", links},
           {"users", users},
           {"transmissions", tx},
           {"all_recovered", run.all_recovered()},
           {"accounting_exact", run.accounting_exact()}};
    if (dump_bytes) {
      json files = json::array();
      for (const auto& f : run.files) {
        files.push_back(hex(f));
      }
      j["files"] = files;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "# verify " << a.config_text() << " B=" << B << " seed=" << seed << " rng=" << run.rng << '\n';
    out << "demand " << tuple_text(run.demand.d) << '\n';
    out << "max_link_load " << rat_text(run.report.max_link_load) << '\n';
    out << "transmissions " << run.transmissions.size() << '\n';
    for (const auto& u : run.users) {
      out << "user " << u.user << ' ' << (u.recovered ? "OK" : "FAIL");
      if (!u.recovered) {
        out << " " << u.error;
        for (const auto& m : u.missing) {
          out << " missing " << m;
        }
      }
      out << '\n';
    }
    const auto recovered = std::count_if(run.users.begin(), run.users.end(), [](const UserOutcome& u) { return u.recovered; });
    out << "recovered " << recovered << "/" << run.users.size() << '\n';
    out << "byte_accounting " << (run.accounting_exact() ? "exact" : "MISMATCH") << '\n';
    if (dump_bytes) {
      for (std::size_t i = 0; i < run.transmissions.size(); ++i) {
        out << "payload " << i << ' ' << hex(run.transmissions[i].payload) << '\n';
      }
    }
  }
  if (debug_mds) {
    dump_generator(layout, report == "json" ? err : out);
  }
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- curve

std::vector<std::string> split_list(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

void csv_row(std::ostream& os, const std::string& scheme, std::optional<int> g, const Rational& M, const Rational& R)
{
  os << scheme << ',' << (g ? std::to_string(*g) : "") << ',' << numerator_of(M) << ',' << denominator_of(M) << ','
     << numerator_of(R) << ',' << denominator_of(R) << ',' << to_decimal_string(M) << ',' << to_decimal_string(R)
     << '\n';
}

int cmd_curve(const NetworkArgs& a, const std::string& schemes, const std::string& path, std::ostream& out,
              std::ostream& err)
{
  const auto list = split_list(schemes);
  if (list.empty()) {
    throw UsageError("--schemes is empty");
  }
  const int H = a.H;
  const int r = a.r;
  const int N = a.N;
  std::ostringstream csv;
  csv << "scheme,g,M_num,M_den,R_num,R_den,M_float,R_float\n";
  for (const auto& s : list) {
    if (s == "thm1" || s == "thm3") {
      const auto pts = s == "thm1" ? thm1_points(H, r, N) : thm3_points(H, r, N);
      if (pts.empty()) {
        err << "note: " << s << " has no points when K' < 2\n";
        continue;
      }
      for (const auto& p : pts) {
        if (!p.anchor) {
          csv_row(csv, s, p.g, p.M, p.R);
        }
      }
      for (const auto& p : lower_convex_envelope(pts, N).points) {
        csv_row(csv, s + "_envelope", p.g, p.M, p.R);
      }
    } else if (s == "zewail") {
      for (const auto& p : zewail_curve(H, r, N)) {
        csv_row(csv, s, p.g, p.M, p.R);
      }
    } else if (s == "routing") {
      csv_row(csv, s, std::nullopt, 0, routing_load(H, r, N, 0));
      csv_row(csv, s, std::nullopt, N, routing_load(H, r, N, N));
    } else if (s == "cutset") {
      csv_row(csv, s, std::nullopt, 0, cutset_bound(H, r, N, 0));
      csv_row(csv, s, std::nullopt, N, cutset_bound(H, r, N, N));
    } else {
      throw UsageError("unknown curve scheme '" + s + "' (thm1, thm3, zewail, routing, cutset)");
    }
  }
  if (path.empty() || path == "-") {
    out << csv.str();
  } else {
    std::ofstream f(path);
    if (!f) {
      throw UsageError("cannot open " + path);
    }
    f << csv.str();
    out << "# curve " << a.config_text() << " schemes=" << schemes << " -> " << path << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- compare / optimal

int cmd_compare(const NetworkArgs& a, bool as_json, std::ostream& out)
{
  const Remark1Report rep = remark1_check(a.H, a.r);
  if (as_json) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
      rows.push_back(json{{"g", row.g}, {"proposed_M_over_N", rat(row.proposed)}, {"baseline_M_over_N", rat(row.baseline)},
                          {"strictly_smaller", row.strictly_smaller}, {"claimed", row.claimed}});
    }
    out << json{{"config", a.config_json()}, {"threshold", rep.threshold}, {"rows", rows}, {"holds", rep.holds()}}.dump(2)
        << '\n';
  } else {
    out << "# compare " << a.config_text() << '\n';
    out << "strictness claimed for g >= " << rep.threshold << '\n';
    out << "g  proposed_M/N  baseline_M/N  strict  claimed\n";
    for (const auto& row : rep.rows) {
      out << row.g << "  " << to_fraction_string(row.proposed) << "  " << to_fraction_string(row.baseline) << "  "
          << (row.strictly_smaller ? "yes" : "no") << "  " << (row.claimed ? "yes" : "no") << '\n';
    }
    out << (rep.holds() ? "PASS" : "FAIL") << '\n';
  }
  return rep.holds() ? kExitOk : kExitFailure;
}

int cmd_optimal(const NetworkArgs& a, bool as_json, std::ostream& out)
{
  const Thm2Report rep = thm2_optimality_check(a.H, a.r, a.N);
  if (as_json) {
    out << json{{"config", a.config_json()},
                {"degenerate", rep.degenerate},
                {"M_star", rat(rep.M_star)},
                {"R_star", rat(rep.R_star)},
                {"cutset_at_M_star", rat(rep.bound_at_star)},
                {"point_matches", rep.point_matches},
                {"meets_bound", rep.meets_bound},
                {"linear_to_N", rep.linear_to_end},
                {"optimal", rep.ok()}}
               .dump(2)
        << '\n';
  } else {
    out << "# optimal " << a.config_text() << '\n';
    if (rep.degenerate) {
      out << "degenerate network (K' < 2): routing only\n";
    }
    out << "M* " << rat_text(rep.M_star) << '\n';
    out << "R* " << rat_text(rep.R_star) << '\n';
    if (rep.q1_point) {
      out << "q=1 point (" << to_fraction_string(rep.q1_point->M) << ", " << to_fraction_string(rep.q1_point->R) << ")\n";
    }
    out << "cutset(M*) " << rat_text(rep.bound_at_star) << '\n';
    out << "point_matches " << (rep.point_matches ? "yes" : "no") << '\n';
    out << "meets_bound " << (rep.meets_bound ? "yes" : "no") << '\n';
    out << "linear_to_N " << (rep.linear_to_end ? "yes" : "no") << '\n';
    out << (rep.ok() ? "OPTIMAL on [M*, N]" : "FAIL") << '\n';
  }
  return rep.ok() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- lemma1 / fixtures

int cmd_lemma1(const NetworkArgs& a, int q, bool check, int user, std::ostream& out)
{
  if (q < 1 || q > binom(a.H, a.r - 1)) {
    throw UsageError("--q must lie in [1, K'']");
  }
  const BigInt G = lemma1_G(a.H, a.r, q);
  if (!check) {
    out << "G=" << G << '\n';
    return kExitOk;
  }
  const auto net = a.network();
  if (user < 1 || user > net.K()) {
    throw UsageError("--user outside [1, K]");
  }
  const std::uint64_t oracle = lemma1_G_bruteforce(net, q, user);
  const bool match = G == oracle;
  out << "G=" << G << ", oracle=" << oracle << ", " << (match ? "MATCH" : "MISMATCH") << '\n';
  return match ? kExitOk : kExitFailure;
}

int cmd_fixtures(const std::string& only, bool as_json, std::ostream& out)
{
  const auto results = run_fixtures(only);
  const auto passed = std::count_if(results.begin(), results.end(), [](const FixtureResult& r) { return r.pass; });
  if (as_json) {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back(json{{"group", r.group}, {"id", r.id}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}});
    }
    out << json{{"results", arr}, {"passed", passed}, {"total", results.size()}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.group << '/' << r.id << "  expected " << r.expected << "  got "
          << r.actual << '\n';
    }
    out << passed << '/' << results.size() << " fixtures passed\n";
  }
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Coded caching in combination networks: placement, delivery, verification and bounds"};
  app.name("combicache");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  NetworkArgs net_args;
  bool as_json = false;
  bool debug_mds = false;

  auto* topo = app.add_subcommand("topology", "Users, relays and adjacency of the (H, r) network");
  net_args.add_network(topo);
  topo->add_flag("--json", as_json, "JSON output");

  auto* place = app.add_subcommand("place", "Cache placement layout: subpacketization, MDS code, memory");
  net_args.add_placement(place);
  place->add_flag("--json", as_json, "JSON output");
  place->add_flag("--debug-mds", debug_mds, "Dump the MDS generator matrix");

  std::string demand = "distinct";
  bool serial = false;
  auto* deliver = app.add_subcommand("deliver", "Multicast delivery and max-link load over a demand set");
  net_args.add_placement(deliver);
  deliver->add_option("--demand", demand, "distinct | all | sample:<n>:<seed>")->capture_default_str();
  deliver->add_flag("--serial", serial, "Evaluate demands on one thread");
  deliver->add_flag("--json", as_json, "JSON output");

  std::optional<std::uint64_t> B;
  std::uint64_t seed = 0;
  std::string report = "text";
  bool dump_bytes = false;
  std::string verify_demand = "distinct";
  auto* verify = app.add_subcommand("verify", "Bit-exact simulation: every user must rebuild its file");
  net_args.add_placement(verify);
  verify->add_option("--B", B, "file size in bytes (default: the block size)");
  verify->add_option("--seed", seed, "seed of the file generator")->capture_default_str();
  verify->add_option("--demand", verify_demand, "distinct or a comma-separated list d_1,...,d_K")->capture_default_str();
  verify->add_option("--report", report, "text | json")->capture_default_str();
  verify->add_flag("--dump-bytes", dump_bytes, "Include file and message bytes");
  verify->add_flag("--debug-mds", debug_mds, "Dump the MDS generator matrix");

  std::string schemes = "thm1,thm3,zewail,routing,cutset";
  std::string out_path;
  auto* curve = app.add_subcommand("curve", "Memory-load tradeoff points, envelopes, baselines and cut-set bound (CSV)");
  net_args.add_network(curve);
  curve->add_option("--N", net_args.N, "number of files")->required();
  curve->add_option("--schemes", schemes, "comma list of thm1, thm3, zewail, routing, cutset")->capture_default_str();
  curve->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* compare = app.add_subcommand("compare", "Minimum memory per gain against the MDS-per-relay baseline");
  net_args.add_network(compare);
  compare->add_flag("--json", as_json, "JSON output");

  auto* optimal = app.add_subcommand("optimal", "Check the q=1 point against the cut-set bound");
  net_args.add_network(optimal);
  optimal->add_option("--N", net_args.N, "number of files")->required();
  optimal->add_flag("--json", as_json, "JSON output");

  int q = 0;
  bool check = false;
  int user = 1;
  auto* lemma = app.add_subcommand("lemma1", "Closed-form count of cached collections in the improved placement");
  net_args.add_network(lemma);
  lemma->add_option("--q", q, "collection size")->required();
  lemma->add_flag("--check", check, "Compare against brute-force enumeration");
  lemma->add_option("--user", user, "user for the brute-force count")->capture_default_str();

  std::string only;
  auto* fixtures = app.add_subcommand("fixtures", "Regression suite over the worked examples and reference values");
  fixtures->add_option("--only", only, "run one group: example1, example2, thm2, fig2, remark1, lemma1");
  fixtures->add_flag("--json", as_json, "JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (topo->parsed()) {
      return cmd_topology(net_args, as_json, out);
    }
    if (place->parsed()) {
      return cmd_place(net_args, as_json, debug_mds, out, err);
    }
    if (deliver->parsed()) {
      return cmd_deliver(net_args, demand, serial, as_json, out);
    }
    if (verify->parsed()) {
      return cmd_verify(net_args, B, seed, verify_demand, report, dump_bytes, debug_mds, out, err);
    }
    if (curve->parsed()) {
      return cmd_curve(net_args, schemes, out_path, out, err);
    }
    if (compare->parsed()) {
      return cmd_compare(net_args, as_json, out);
    }
    if (optimal->parsed()) {
      return cmd_optimal(net_args, as_json, out);
    }
    if (lemma->parsed()) {
      return cmd_lemma1(net_args, q, check, user, out);
    }
    if (fixtures->parsed()) {
      return cmd_fixtures(only, as_json, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EnumerationCapError& e) {
    err << "enumeration cap: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace combicache::cli
