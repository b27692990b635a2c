#include "brpa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "brpa/analytic.hpp"
#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "brpa/gof.hpp"
#include "brpa/graph_stats.hpp"
#include "brpa/maxtree.hpp"
#include "brpa/random.hpp"

namespace brpa {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr std::string_view kVersion = "1.0.0";

[[noreturn]] void config_error(const std::string& message) {
  fail(ErrorCode::kConfigError, "config: " + message);
}

// ---- statistic registry ------------------------------------------------------

enum class Stat {
  kLoops,
  kParallelPairs,
  kConnected,
  kSpanningRecursive,
  kNumRoots,
  kLargestTreeFraction,
  kScaledRoot,
  kPrefixMaxtree,
  kConnectorPresent,
  kConnectorMin,
  kMinPrefixDegree,
  kMinPrefixOk,
  kL1Degree,
  kCapViolations,
  kCapOk,
  kLoopDegseq,
};

struct StatInfo {
  std::string_view name;
  Stat stat;
  bool categorical = false;
  bool binary = false;
  bool needs_process = false;
  bool needs_m1 = false;
  bool needs_arg = false;
};

constexpr StatInfo kStats[] = {
    {"loops", Stat::kLoops},
    {"parallel_pairs", Stat::kParallelPairs},
    {"connected", Stat::kConnected, false, true},
    {"spanning_recursive", Stat::kSpanningRecursive, false, true},
    {"num_roots", Stat::kNumRoots, false, false, false, true},
    {"largest_tree_fraction", Stat::kLargestTreeFraction, false, false, false, true},
    {"scaled_root", Stat::kScaledRoot, false, false, false, true, true},
    {"prefix_maxtree", Stat::kPrefixMaxtree, false, true},
    {"connector_present", Stat::kConnectorPresent, false, true},
    {"connector_min", Stat::kConnectorMin},
    {"min_prefix_degree", Stat::kMinPrefixDegree},
    {"min_prefix_ok", Stat::kMinPrefixOk, false, true},
    {"l1_degree", Stat::kL1Degree, false, false, true},
    {"cap_violations", Stat::kCapViolations},
    {"cap_ok", Stat::kCapOk, false, true},
    {"loop_degseq", Stat::kLoopDegseq, true},
};

const StatInfo* find_stat(std::string_view name) {
  for (const auto& s : kStats) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

// Oracle statistic matching a harness statistic, when one exists.
std::optional<ExactStatistic> oracle_for(Stat s) {
  switch (s) {
    case Stat::kLoops: return ExactStatistic::kLoopCount;
    case Stat::kParallelPairs: return ExactStatistic::kParallelPairs;
    case Stat::kConnected: return ExactStatistic::kConnected;
    case Stat::kSpanningRecursive: return ExactStatistic::kSpanningRecursive;
    case Stat::kPrefixMaxtree: return ExactStatistic::kPrefixMaxtree;
    case Stat::kLoopDegseq: return ExactStatistic::kLoopsAndDegrees;
    default: return std::nullopt;
  }
}

// Per-cell constants derived from parameters.
struct CellConstants {
  std::uint32_t mu = 0;
  std::uint32_t omega = 0;
  double z = 0.0;
  double degree_threshold = 0.0;
};

CellConstants constants_for(const CellSpec& c, const ExperimentParams& p) {
  CellConstants k;
  const double n = static_cast<double>(c.n);
  k.mu = static_cast<std::uint32_t>(
      std::min(n, std::floor(std::pow(n, p.mu_exponent) * (1.0 + 1e-12))));
  const double log_n = std::log(n);
  k.omega = log_n > 0.0
                ? static_cast<std::uint32_t>(std::floor(std::pow(log_n, p.omega_log_exponent) * (1.0 + 1e-12)))
                : 0;
  if (p.sigma > 0.0 && p.sigma < 1.0) k.z = p.z_factor * z_sigma(p.sigma);
  if (p.a > 0.0 && p.a < static_cast<double>(c.m) / (c.m + 2)) {
    k.degree_threshold = min_degree_threshold(c.n, c.m, p.a);
  }
  return k;
}

std::string cell_label(const CellSpec& c) {
  std::string s = "n=" + std::to_string(c.n) + " m=" + std::to_string(c.m) + " method=" +
                  std::string(method_name(c.method));
  if (c.delta) {
    std::ostringstream d;
    d << *c.delta;
    s += " delta=" + d.str();
  }
  return s;
}

void check_stat_for_cell(const StatInfo& info, const StatisticSpec& spec, const CellSpec& c,
                         const ExperimentParams& p) {
  const std::string where = " (" + spec.label + ", " + cell_label(c) + ")";
  if (info.needs_process && c.method != GenMethod::kExponential) {
    config_error("statistic needs the exp method" + where);
  }
  if (info.needs_m1 && c.m != 1) config_error("statistic needs m = 1" + where);
  const CellConstants k = constants_for(c, p);
  switch (info.stat) {
    case Stat::kScaledRoot: {
      char* end = nullptr;
      const unsigned long r = std::strtoul(spec.arg.c_str(), &end, 10);
      if (spec.arg.empty() || *end != '\0' || r < 1 || r > c.n) {
        config_error("scaled_root needs a root 1..n" + where);
      }
      break;
    }
    case Stat::kPrefixMaxtree:
      if (c.m >= 2 && c.n > kPrefixMaxtreeOracleLimit) {
        config_error("prefix_maxtree with m >= 2 is limited to n <= 20" + where);
      }
      break;
    case Stat::kConnectorPresent:
    case Stat::kConnectorMin:
      if (k.omega < 2 || k.omega >= c.n) config_error("connector window needs 2 <= omega < n" + where);
      break;
    case Stat::kMinPrefixDegree:
    case Stat::kMinPrefixOk:
    case Stat::kL1Degree:
      if (!(p.a > 0.0 && p.a < static_cast<double>(c.m) / (c.m + 2))) {
        config_error("params.a must lie in (0, m/(m+2))" + where);
      }
      break;
    case Stat::kCapViolations:
    case Stat::kCapOk:
      if (!(p.sigma > 0.0 && p.sigma < 1.0) || !(p.a > 0.0 && p.a < 1.0) || k.z <= 1.0) {
        config_error("degree caps need sigma, a in (0,1) and z > 1" + where);
      }
      break;
    default: break;
  }
  if (!spec.arg.empty() && !info.needs_arg) config_error("statistic takes no argument" + where);
}

// ---- config parsing ----------------------------------------------------------

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void allow_keys(const json& obj, std::initializer_list<std::string_view> keys,
                const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      config_error("unknown key '" + key + "' in " + where);
    }
  }
}

std::uint64_t as_count(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  config_error(what + " must be a nonnegative integer");
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) config_error(what + " must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) config_error(what + " must be a string");
  return v.get<std::string>();
}

std::vector<std::uint32_t> as_u32_list(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) config_error(what + " must be a nonempty array");
  std::vector<std::uint32_t> out;
  for (const auto& x : v) {
    const std::uint64_t k = as_count(x, what);
    if (k < 1 || k > 0xFFFFFFFFull) config_error(what + " entries must be in 1..2^32-1");
    out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

std::vector<GenMethod> as_methods(const json& v, const std::string& what) {
  std::vector<std::string> names;
  if (v.is_string()) {
    names.push_back(v.get<std::string>());
  } else if (v.is_array() && !v.empty()) {
    for (const auto& x : v) names.push_back(as_string(x, what));
  } else {
    config_error(what + " must be a method name or a nonempty array");
  }
  std::vector<GenMethod> out;
  for (const auto& name : names) {
    const auto m = method_from_name(name);
    if (!m) config_error("unknown method '" + name + "'");
    out.push_back(*m);
  }
  return out;
}

std::vector<std::optional<double>> as_deltas(const json& v, const std::string& what) {
  std::vector<std::optional<double>> out;
  auto one = [&](const json& x) {
    if (x.is_null()) {
      out.emplace_back();
    } else {
      out.emplace_back(as_number(x, what));
    }
  };
  if (v.is_array()) {
    if (v.empty()) config_error(what + " must not be empty");
    for (const auto& x : v) one(x);
  } else {
    one(v);
  }
  return out;
}

void add_cell(ExperimentConfig& cfg, std::uint32_t n, std::uint32_t m, GenMethod method,
              std::optional<double> delta) {
  CellSpec c{n, m, method, delta};
  if (delta) {
    if (method != GenMethod::kSequential || m != 1 || !(*delta >= -1.0)) {
      config_error("delta needs method seq, m = 1 and delta >= -1 (" + cell_label(c) + ")");
    }
  }
  if (std::uint64_t{n} * m >= 0x7FFFFFFFull) config_error("m*n too large (" + cell_label(c) + ")");
  cfg.cells.push_back(c);
}

TestSpec parse_test(const json& t, std::size_t index) {
  const std::string where = "tests[" + std::to_string(index) + "]";
  if (!t.is_object() || !t.contains("kind")) config_error(where + " needs a kind");
  TestSpec s;
  s.kind = as_string(t.at("kind"), where + ".kind");
  const std::initializer_list<std::string_view> common = {"kind", "statistic", "n", "m"};
  std::vector<std::string_view> allowed(common);
  if (s.kind == "chi-square-vs-oracle") {
    allowed.insert(allowed.end(), {"max_tv", "min_p"});
  } else if (s.kind == "loglog-fit") {
    allowed.insert(allowed.end(), {"model", "target", "slope", "rel_tol"});
  } else if (s.kind == "frequency-vs-formula") {
    allowed.insert(allowed.end(), {"formula", "max_se"});
  } else if (s.kind == "fraction-at-least") {
    allowed.insert(allowed.end(), {"min_fraction"});
  } else if (s.kind == "ks-vs-mixture") {
    allowed.insert(allowed.end(), {"max_d", "moment_rel_tol", "max_moment"});
  } else if (s.kind == "trend") {
    allowed.insert(allowed.end(), {"aggregate", "direction"});
  } else if (s.kind == "always-equal") {
    allowed.insert(allowed.end(), {"value"});
  } else {
    config_error("unknown test kind '" + s.kind + "'");
  }
  for (const auto& [key, value] : t.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      config_error("unknown key '" + key + "' in " + where);
    }
  }
  if (!t.contains("statistic")) config_error(where + " needs a statistic");
  s.statistic = as_string(t.at("statistic"), where + ".statistic");
  if (t.contains("n")) s.n_filter = as_u32_list(t.at("n"), where + ".n");
  if (t.contains("m")) s.m_filter = as_u32_list(t.at("m"), where + ".m");
  auto num = [&](const char* key, double& out) {
    if (t.contains(key)) out = as_number(t.at(key), where + "." + key);
  };
  auto str = [&](const char* key, std::string& out) {
    if (t.contains(key)) out = as_string(t.at(key), where + "." + key);
  };
  num("max_tv", s.max_tv);
  num("min_p", s.min_p);
  str("model", s.model);
  str("target", s.target);
  num("slope", s.slope);
  num("rel_tol", s.rel_tol);
  str("formula", s.formula);
  num("max_se", s.max_se);
  num("min_fraction", s.min_fraction);
  num("max_d", s.max_d);
  num("moment_rel_tol", s.moment_rel_tol);
  if (t.contains("max_moment")) {
    s.max_moment = static_cast<unsigned>(as_count(t.at("max_moment"), where + ".max_moment"));
  }
  str("aggregate", s.aggregate);
  str("direction", s.direction);
  num("value", s.value);

  if (s.kind == "loglog-fit") {
    if (s.model != "log" && s.model != "log2") config_error(where + ".model must be log or log2");
    if (s.target.empty() && !t.contains("slope")) config_error(where + " needs target or slope");
    if (!s.target.empty() && s.target != "loop_slope" && s.target != "parallel_slope") {
      config_error(where + ".target must be loop_slope or parallel_slope");
    }
    if (!(s.rel_tol > 0.0)) config_error(where + ".rel_tol must be positive");
  }
  if (s.kind == "frequency-vs-formula" && s.formula != "connected_g1_exact" &&
      s.formula != "connect_probability") {
    config_error(where + ".formula must be connected_g1_exact or connect_probability");
  }
  if (s.kind == "trend") {
    if (s.aggregate != "median" && s.aggregate != "mean") {
      config_error(where + ".aggregate must be median or mean");
    }
    static const std::set<std::string> directions = {"decreasing", "increasing", "non-increasing",
                                                     "non-decreasing"};
    if (!directions.count(s.direction)) config_error(where + ".direction is not recognized");
  }
  if (s.kind == "ks-vs-mixture" && (s.max_moment < 1 || s.max_moment > 12)) {
    config_error(where + ".max_moment must lie in 1..12");
  }
  return s;
}

bool cell_selected(const TestSpec& t, const CellSpec& c) {
  auto has = [](const std::vector<std::uint32_t>& list, std::uint32_t x) {
    return list.empty() || std::find(list.begin(), list.end(), x) != list.end();
  };
  return has(t.n_filter, c.n) && has(t.m_filter, c.m);
}

// Cells sharing (m, method, delta), ordered by n.
std::vector<std::vector<std::size_t>> groups_for(const ExperimentConfig& cfg, const TestSpec& t) {
  std::map<std::tuple<std::uint32_t, int, bool, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cfg.cells.size(); ++i) {
    const auto& c = cfg.cells[i];
    if (!cell_selected(t, c)) continue;
    groups[{c.m, static_cast<int>(c.method), c.delta.has_value(), c.delta.value_or(0.0)}].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [key, members] : groups) {
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.cells[a].n < cfg.cells[b].n; });
    out.push_back(members);
  }
  return out;
}

void validate_tests(const ExperimentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.tests.size(); ++i) {
    const TestSpec& t = cfg.tests[i];
    const std::string where = "tests[" + std::to_string(i) + "] (" + t.kind + ")";
    const auto spec = std::find_if(cfg.statistics.begin(), cfg.statistics.end(),
                                   [&](const StatisticSpec& s) { return s.label == t.statistic; });
    if (spec == cfg.statistics.end()) config_error(where + ": statistic '" + t.statistic + "' is not collected");
    const StatInfo& info = *find_stat(spec->name);
    std::vector<std::size_t> selected;
    for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
      if (cell_selected(t, cfg.cells[c])) selected.push_back(c);
    }
    if (selected.empty()) config_error(where + ": filters select no cell");
    if (info.categorical && t.kind != "chi-square-vs-oracle") {
      config_error(where + ": categorical statistic only supports chi-square-vs-oracle");
    }
    if (t.kind == "chi-square-vs-oracle") {
      if (!oracle_for(info.stat)) config_error(where + ": statistic has no exact oracle");
      for (std::size_t c : selected) {
        const auto& cell = cfg.cells[c];
        if (std::uint64_t{cell.n} * cell.m > kMaxEnumeratedChords) {
          config_error(where + ": oracle needs mn <= 9 (" + cell_label(cell) + ")");
        }
        if (cell.delta) config_error(where + ": oracle covers the base model only");
      }
    } else if (t.kind == "frequency-vs-formula" || t.kind == "fraction-at-least") {
      if (!info.binary) config_error(where + ": statistic must be a 0/1 indicator");
      if (t.formula == "connected_g1_exact") {
        for (std::size_t c : selected) {
          if (cfg.cells[c].m != 1) config_error(where + ": connected_g1_exact needs m = 1");
        }
      }
      if (t.kind == "frequency-vs-formula") {
        for (std::size_t c : selected) {
          if (cfg.cells[c].delta) config_error(where + ": formulas cover the base model only");
        }
      }
    } else if (t.kind == "ks-vs-mixture") {
      if (info.stat != Stat::kScaledRoot) config_error(where + ": needs a scaled_root statistic");
      for (std::size_t c : selected) {
        const auto& d = cfg.cells[c].delta;
        if (d && !(*d > -1.0)) config_error(where + ": the limit law needs delta > -1");
      }
    } else if (t.kind == "loglog-fit" || t.kind == "trend") {
      const std::size_t need = t.kind == "loglog-fit" ? 4 : 2;
      for (const auto& group : groups_for(cfg, t)) {
        std::set<std::uint32_t> ns;
        for (std::size_t c : group) ns.insert(cfg.cells[c].n);
        if (ns.size() != group.size()) config_error(where + ": duplicate n within a group");
        if (group.size() < need) {
          config_error(where + ": needs at least " + std::to_string(need) + " grid points per group");
        }
      }
    }
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  allow_keys(root, {"name", "seed", "runs", "grid", "cells", "statistics", "params", "tests"}, "config");
  ExperimentConfig cfg;
  cfg.hash = fnv1a(root.dump());
  if (!root.contains("seed")) config_error("seed is mandatory");
  cfg.seed = as_count(root.at("seed"), "seed");
  if (!root.contains("runs")) config_error("runs is mandatory");
  cfg.runs = as_count(root.at("runs"), "runs");
  if (cfg.runs < 1) config_error("runs must be at least 1");
  cfg.name = root.contains("name") ? as_string(root.at("name"), "name") : "experiment";

  if (root.contains("grid") == root.contains("cells")) config_error("give exactly one of grid or cells");
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    allow_keys(g, {"n", "m", "method", "delta"}, "grid");
    if (!g.contains("n") || !g.contains("m")) config_error("grid needs n and m");
    const auto ns = as_u32_list(g.at("n"), "grid.n");
    const auto ms = as_u32_list(g.at("m"), "grid.m");
    const auto methods = g.contains("method") ? as_methods(g.at("method"), "grid.method")
                                              : std::vector<GenMethod>{GenMethod::kExponential};
    const auto deltas = g.contains("delta") ? as_deltas(g.at("delta"), "grid.delta")
                                            : std::vector<std::optional<double>>{std::nullopt};
    for (auto m : ms)
      for (auto method : methods)
        for (const auto& d : deltas)
          for (auto n : ns) add_cell(cfg, n, m, method, d);
  } else {
    const json& cells = root.at("cells");
    if (!cells.is_array() || cells.empty()) config_error("cells must be a nonempty array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string where = "cells[" + std::to_string(i) + "]";
      const json& c = cells[i];
      allow_keys(c, {"n", "m", "method", "delta"}, where);
      if (!c.contains("n") || !c.contains("m")) config_error(where + " needs n and m");
      const auto n = as_count(c.at("n"), where + ".n");
      const auto m = as_count(c.at("m"), where + ".m");
      if (n < 1 || m < 1 || n > 0xFFFFFFFFull || m > 0xFFFFFFFFull) config_error(where + ": n, m must be >= 1");
      const auto methods = c.contains("method") ? as_methods(c.at("method"), where + ".method")
                                                : std::vector<GenMethod>{GenMethod::kExponential};
      const auto deltas = c.contains("delta") ? as_deltas(c.at("delta"), where + ".delta")
                                              : std::vector<std::optional<double>>{std::nullopt};
      for (auto method : methods)
        for (const auto& d : deltas)
          add_cell(cfg, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), method, d);
    }
  }

  if (root.contains("params")) {
    const json& p = root.at("params");
    allow_keys(p, {"a", "sigma", "z_factor", "mu_exponent", "omega_log_exponent"}, "params");
    if (p.contains("a")) cfg.params.a = as_number(p.at("a"), "params.a");
    if (p.contains("sigma")) cfg.params.sigma = as_number(p.at("sigma"), "params.sigma");
    if (p.contains("z_factor")) cfg.params.z_factor = as_number(p.at("z_factor"), "params.z_factor");
    if (p.contains("mu_exponent")) cfg.params.mu_exponent = as_number(p.at("mu_exponent"), "params.mu_exponent");
    if (p.contains("omega_log_exponent")) {
      cfg.params.omega_log_exponent = as_number(p.at("omega_log_exponent"), "params.omega_log_exponent");
    }
  }

  if (!root.contains("statistics")) config_error("statistics is mandatory");
  const json& stats = root.at("statistics");
  if (!stats.is_array() || stats.empty()) config_error("statistics must be a nonempty array");
  std::set<std::string> seen;
  for (const auto& s : stats) {
    StatisticSpec spec;
    spec.label = as_string(s, "statistics entry");
    const auto colon = spec.label.find(':');
    spec.name = spec.label.substr(0, colon);
    spec.arg = colon == std::string::npos ? "" : spec.label.substr(colon + 1);
    const StatInfo* info = find_stat(spec.name);
    if (!info) config_error("unknown statistic '" + spec.label + "'");
    if (!seen.insert(spec.label).second) config_error("duplicate statistic '" + spec.label + "'");
    for (const auto& c : cfg.cells) check_stat_for_cell(*info, spec, c, cfg.params);
    cfg.statistics.push_back(spec);
  }

  if (root.contains("tests")) {
    const json& tests = root.at("tests");
    if (!tests.is_array()) config_error("tests must be an array");
    for (std::size_t i = 0; i < tests.size(); ++i) cfg.tests.push_back(parse_test(tests[i], i));
  }
  validate_tests(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

unsigned default_workers() {
  if (const char* env = std::getenv("BRPA_WORKERS")) {
    char* end = nullptr;
    const unsigned long k = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && k >= 1 && k <= 1024) return static_cast<unsigned>(k);
  }
  return 1;
}

std::string_view library_version() { return kVersion; }

// ---- running -------------------------------------------------------------------

namespace {

struct StatColumn {
  StatisticSpec spec;
  const StatInfo* info = nullptr;
  std::vector<double> values;                   // numeric, by run index
  std::map<std::string, std::uint64_t> counts;  // categorical
};

struct CellResult {
  std::vector<StatColumn> columns;
};

struct RunState {
  const Sample& sample;
  const CellSpec& cell;
  const ExperimentParams& params;
  const CellConstants& k;
  std::optional<MaxTreeForest> forest;
  std::optional<DegreeReport> degrees;

  const MaxTreeForest& get_forest() {
    if (!forest) forest = forest_m1(sample.graph);
    return *forest;
  }
  const DegreeReport& get_degrees() {
    if (!degrees) {
      degrees = degree_report(sample.graph, sample.process ? &*sample.process : nullptr, params.a);
    }
    return *degrees;
  }
};

double numeric_value(const StatColumn& col, RunState& st) {
  const MultiGraph& g = st.sample.graph;
  switch (col.info->stat) {
    case Stat::kLoops: return static_cast<double>(loop_count(g));
    case Stat::kParallelPairs: return static_cast<double>(parallel_pair_count(g));
    case Stat::kConnected: return is_connected(g) ? 1.0 : 0.0;
    case Stat::kSpanningRecursive: return spanning_recursive_exists(g) ? 1.0 : 0.0;
    case Stat::kNumRoots: return static_cast<double>(st.get_forest().roots.size());
    case Stat::kLargestTreeFraction: {
      const auto& sizes = st.get_forest().sizes;
      return static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) / g.n();
    }
    case Stat::kScaledRoot:
      return scaled_root_component(st.get_forest(),
                                   static_cast<Vertex>(std::strtoul(col.spec.arg.c_str(), nullptr, 10)));
    case Stat::kPrefixMaxtree: return prefix_maxtree_present(g, st.k.mu) ? 1.0 : 0.0;
    case Stat::kConnectorPresent: return min_connector_count(g, st.k.omega) > 0 ? 1.0 : 0.0;
    case Stat::kConnectorMin: return static_cast<double>(min_connector_count(g, st.k.omega));
    case Stat::kMinPrefixDegree: return static_cast<double>(min_prefix_degree(g, st.params.a));
    case Stat::kMinPrefixOk:
      return static_cast<double>(min_prefix_degree(g, st.params.a)) > st.k.degree_threshold ? 1.0 : 0.0;
    case Stat::kL1Degree: return st.get_degrees().l1_statistic;
    case Stat::kCapViolations:
      return static_cast<double>(degree_cap_violations(g, st.params.sigma, st.k.z, st.params.a));
    case Stat::kCapOk:
      return degree_cap_violations(g, st.params.sigma, st.k.z, st.params.a) == 0 ? 1.0 : 0.0;
    case Stat::kLoopDegseq: break;
  }
  fail(ErrorCode::kInvalidArgument, "statistic is not numeric");
}

CellResult run_cell(const ExperimentConfig& cfg, std::size_t cell_index, unsigned workers) {
  const CellSpec& cell = cfg.cells[cell_index];
  const CellConstants k = constants_for(cell, cfg.params);
  const std::uint64_t cell_seed = derive_seed(cfg.seed, cell_index);
  CellResult result;
  for (const auto& spec : cfg.statistics) {
    StatColumn col;
    col.spec = spec;
    col.info = find_stat(spec.name);
    if (!col.info->categorical) col.values.assign(cfg.runs, 0.0);
    result.columns.push_back(std::move(col));
  }

  const unsigned threads =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, cfg.runs)));
  std::vector<std::vector<std::map<std::string, std::uint64_t>>> local_counts(
      threads, std::vector<std::map<std::string, std::uint64_t>>(result.columns.size()));
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](unsigned t, std::uint64_t lo, std::uint64_t hi) {
    try {
      for (std::uint64_t run = lo; run < hi; ++run) {
        Rng rng(derive_seed(cell_seed, run));
        const Sample sample = generate(cell.n, cell.m, cell.method, rng, cell.delta);
        RunState st{sample, cell, cfg.params, k, std::nullopt, std::nullopt};
        for (std::size_t c = 0; c < result.columns.size(); ++c) {
          StatColumn& col = result.columns[c];
          if (col.info->categorical) {
            ++local_counts[t][c][outcome_key(ExactStatistic::kLoopsAndDegrees, sample.graph)];
          } else {
            col.values[run] = numeric_value(col, st);
          }
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  const std::uint64_t chunk = (cfg.runs + threads - 1) / threads;
  if (threads == 1) {
    work(0, 0, cfg.runs);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = std::min(cfg.runs, t * chunk);
      const std::uint64_t hi = std::min(cfg.runs, lo + chunk);
      pool.emplace_back(work, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    for (unsigned t = 0; t < threads; ++t) {
      for (const auto& [key, count] : local_counts[t][c]) result.columns[c].counts[key] += count;
    }
  }
  return result;
}

struct Summary {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_ = 0.0;
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

double quantile_sorted(const std::vector<double>& s, double q) {
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

Summary summarize(const std::vector<double>& v) {
  Summary s;
  const double n = static_cast<double>(v.size());
  for (double x : v) s.mean += x;
  s.mean /= n;
  if (v.size() > 1) {
    for (double x : v) s.variance += (x - s.mean) * (x - s.mean);
    s.variance /= (n - 1.0);
  }
  s.stderr_ = std::sqrt(s.variance / n);
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q75 = quantile_sorted(sorted, 0.75);
  return s;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string join_ids(const std::vector<std::size_t>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(cells[i] + 1);
  }
  return s;
}

struct Evaluator {
  const ExperimentConfig& cfg;
  const std::vector<CellResult>& results;

  const StatColumn& column(std::size_t cell, const std::string& label) const {
    for (const auto& col : results[cell].columns) {
      if (col.spec.label == label) return col;
    }
    fail(ErrorCode::kConfigError, "statistic not collected: " + label);
  }

  TestOutcome base(const TestSpec& t, const std::vector<std::size_t>& cells) const {
    TestOutcome o;
    o.kind = t.kind;
    o.statistic = t.statistic;
    o.scope = join_ids(cells);
    const auto& c0 = cfg.cells[cells.front()];
    o.n = cells.size() == 1 ? c0.n : 0;
    o.m = c0.m;
    o.method = std::string(method_name(c0.method));
    if (c0.delta) o.method += "(delta=" + fmt(*c0.delta) + ")";
    return o;
  }

  std::vector<std::size_t> selected(const TestSpec& t) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
      if (cell_selected(t, cfg.cells[c])) out.push_back(c);
    }
    return out;
  }

  void chi_square_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (std::size_t c : selected(t)) {
      const auto& cell = cfg.cells[c];
      const StatColumn& col = column(c, t.statistic);
      const ExactStatistic which = *oracle_for(col.info->stat);
      const CellConstants k = constants_for(cell, cfg.params);
      const ExactDistribution exact = exact_distribution(cell.n, cell.m, which, k.mu);
      std::map<std::string, double> expected;
      for (const auto& [key, count] : exact.counts) {
        expected[key] = static_cast<double>(count) / static_cast<double>(exact.total);
      }
      std::map<std::string, std::uint64_t> observed;
      if (col.info->categorical) {
        observed = col.counts;
      } else {
        for (double v : col.values) ++observed[std::to_string(static_cast<long long>(std::llround(v)))];
      }
      TestOutcome o = base(t, {c});
      bool foreign = false;
      for (const auto& [key, count] : observed) {
        if (!expected.count(key)) foreign = true;
      }
      if (foreign) {
        o.value = 1.0;
        o.p_or_band = "0";
        o.pass = false;
        o.detail = "outcome outside the exact support";
      } else {
        const ChiSquareResult r = chi_square(observed, expected);
        o.value = r.total_variation;
        o.p_or_band = fmt(r.p_value);
        o.pass = r.total_variation < t.max_tv && r.p_value > t.min_p;
        // Expected TV of an exact sampler: sum_k sqrt(p_k(1-p_k)/(2 pi runs)).
        double floor = 0.0;
        for (const auto& [key, p] : expected) {
          floor += std::sqrt(p * (1.0 - p) / (2.0 * std::numbers::pi * static_cast<double>(cfg.runs)));
        }
        o.detail = "chi2=" + fmt(r.statistic) + " df=" + std::to_string(r.degrees_of_freedom) +
                   " support=" + std::to_string(expected.size()) + " pooled=" +
                   std::to_string(r.pooled_cells) + " tv_noise_floor=" + fmt(floor);
      }
      out.push_back(o);
    }
  }

  void fit_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (const auto& group : groups_for(cfg, t)) {
      std::vector<double> xs, ys;
      for (std::size_t c : group) {
        const double ln = std::log(static_cast<double>(cfg.cells[c].n));
        xs.push_back(t.model == "log" ? ln : ln * ln);
        ys.push_back(summarize(column(c, t.statistic).values).mean);
      }
      const LinearFit f = linear_fit(xs, ys);
      const double m = cfg.cells[group.front()].m;
      double target = t.slope;
      if (t.target == "loop_slope") target = (m + 1.0) / 4.0;
      if (t.target == "parallel_slope") target = (m * m - 1.0) / 16.0;
      TestOutcome o = base(t, group);
      o.value = f.slope;
      o.p_or_band = "[" + fmt(f.band_low) + ";" + fmt(f.band_high) + "]";
      o.pass = std::abs(f.slope - target) <= t.rel_tol * std::abs(target);
      o.detail = "target=" + fmt(target) + " rel_err=" + fmt(std::abs(f.slope - target) / std::abs(target)) +
                 " intercept=" + fmt(f.intercept);
      out.push_back(o);
    }
  }

  void frequency_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (std::size_t c : selected(t)) {
      const auto& cell = cfg.cells[c];
      const double freq = summarize(column(c, t.statistic).values).mean;
      const double p = t.formula == "connected_g1_exact" ? connected_g1_exact(cell.n)
                                                          : connect_probability(cell.n, cell.m);
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.runs));
      TestOutcome o = base(t, {c});
      o.value = freq;
      o.p_or_band = "[" + fmt(p - t.max_se * se) + ";" + fmt(p + t.max_se * se) + "]";
      o.pass = std::abs(freq - p) <= t.max_se * se;
      o.detail = "formula=" + fmt(p) + " z=" + fmt(se > 0 ? (freq - p) / se : 0.0);
      out.push_back(o);
    }
  }

  void fraction_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (std::size_t c : selected(t)) {
      const double freq = summarize(column(c, t.statistic).values).mean;
      TestOutcome o = base(t, {c});
      o.value = freq;
      o.p_or_band = ">=" + fmt(t.min_fraction);
      o.pass = freq >= t.min_fraction;
      out.push_back(o);
    }
  }

  void ks_test_mixture(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (std::size_t c : selected(t)) {
      const auto& cell = cfg.cells[c];
      const StatColumn& col = column(c, t.statistic);
      const auto r = static_cast<std::uint32_t>(std::strtoul(col.spec.arg.c_str(), nullptr, 10));
      const BetaMixture law = beta_mixture(r, cell.delta);
      TestOutcome o = base(t, {c});
      if (col.values.size() < 30) {
        o.pass = false;
        o.detail = "fewer than 30 samples";
        out.push_back(o);
        continue;
      }
      const KsResult ks = ks_test(col.values, [&](double x) { return law.cdf(x); });
      bool moments_ok = true;
      std::string detail;
      for (unsigned l = 1; l <= t.max_moment; ++l) {
        double emp = 0.0;
        for (double x : col.values) emp += std::pow(x, l);
        emp /= static_cast<double>(col.values.size());
        const double th = law.moment(l);
        const double rel = std::abs(emp - th) / th;
        if (!(rel <= t.moment_rel_tol)) moments_ok = false;
        detail += "m" + std::to_string(l) + "=" + fmt(emp) + "/" + fmt(th) + " ";
      }
      o.value = ks.statistic;
      o.p_or_band = fmt(ks.p_value);
      o.pass = ks.statistic < t.max_d && moments_ok;
      o.detail = detail + (moments_ok ? "moments ok" : "moments off");
      out.push_back(o);
    }
  }

  void trend_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (const auto& group : groups_for(cfg, t)) {
      std::vector<double> agg;
      for (std::size_t c : group) {
        const Summary s = summarize(column(c, t.statistic).values);
        agg.push_back(t.aggregate == "median" ? s.median : s.mean);
      }
      bool ok = true;
      for (std::size_t i = 1; i < agg.size(); ++i) {
        const double prev = agg[i - 1], cur = agg[i];
        if (t.direction == "decreasing") ok &= cur < prev;
        if (t.direction == "increasing") ok &= cur > prev;
        if (t.direction == "non-increasing") ok &= cur <= prev;
        if (t.direction == "non-decreasing") ok &= cur >= prev;
      }
      TestOutcome o = base(t, group);
      std::string series;
      for (std::size_t i = 0; i < agg.size(); ++i) series += (i ? ";" : "") + fmt(agg[i]);
      o.value = agg.back();
      o.p_or_band = "[" + series + "]";
      o.pass = ok;
      o.detail = t.aggregate + " " + t.direction + " in n";
      out.push_back(o);
    }
  }

  void always_equal_test(const TestSpec& t, std::vector<TestOutcome>& out) const {
    for (std::size_t c : selected(t)) {
      std::uint64_t off = 0;
      for (double v : column(c, t.statistic).values) off += v != t.value;
      TestOutcome o = base(t, {c});
      o.value = static_cast<double>(off);
      o.p_or_band = "==" + fmt(t.value);
      o.pass = off == 0;
      o.detail = std::to_string(off) + " runs differ";
      out.push_back(o);
    }
  }

  std::vector<TestOutcome> run() const {
    std::vector<TestOutcome> out;
    for (const auto& t : cfg.tests) {
      if (t.kind == "chi-square-vs-oracle") chi_square_test(t, out);
      else if (t.kind == "loglog-fit") fit_test(t, out);
      else if (t.kind == "frequency-vs-formula") frequency_test(t, out);
      else if (t.kind == "fraction-at-least") fraction_test(t, out);
      else if (t.kind == "ks-vs-mixture") ks_test_mixture(t, out);
      else if (t.kind == "trend") trend_test(t, out);
      else if (t.kind == "always-equal") always_equal_test(t, out);
    }
    return out;
  }
};

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  if (workers == 0) workers = 1;
  std::vector<CellResult> results;
  results.reserve(cfg.cells.size());
  for (std::size_t c = 0; c < cfg.cells.size(); ++c) results.push_back(run_cell(cfg, c, workers));

  Report report;
  report.outcomes = Evaluator{cfg, results}.run();

  std::ostringstream csv;
  csv << kReportCsvHeader << '\n';
  ojson cells = ojson::array();
  for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
    const auto& cell = cfg.cells[c];
    ojson jc;
    jc["id"] = c + 1;
    jc["n"] = cell.n;
    jc["m"] = cell.m;
    jc["method"] = std::string(method_name(cell.method));
    jc["delta"] = cell.delta ? ojson(*cell.delta) : ojson(nullptr);
    jc["runs"] = cfg.runs;
    jc["seed"] = derive_seed(cfg.seed, c);
    ojson js = ojson::object();
    for (const auto& col : results[c].columns) {
      const std::string prefix = std::to_string(c + 1) + "," + std::to_string(cell.n) + "," +
                                 std::to_string(cell.m) + "," + std::string(method_name(cell.method)) + "," +
                                 col.spec.label + ",";
      if (col.info->categorical) {
        ojson counts = ojson::object();
        for (const auto& [key, count] : col.counts) counts[key] = count;
        js[col.spec.label] = {{"outcomes", col.counts.size()}, {"counts", counts}};
        csv << prefix << ",,,," << '\n';
        continue;
      }
      const Summary s = summarize(col.values);
      js[col.spec.label] = {{"mean", s.mean},     {"variance", s.variance}, {"stderr", s.stderr_},
                            {"min", s.min},       {"q25", s.q25},           {"median", s.median},
                            {"q75", s.q75},       {"max", s.max}};
      csv << prefix << fmt(s.mean) << ',' << fmt(s.stderr_) << ",,," << '\n';
    }
    jc["statistics"] = js;
    cells.push_back(jc);
  }

  ojson tests = ojson::array();
  for (const auto& o : report.outcomes) {
    if (!o.pass) ++report.tests_failed;
    csv << o.scope << ',' << (o.n ? std::to_string(o.n) : "*") << ',' << o.m << ',' << o.method << ','
        << o.statistic << ",,," << o.kind << (o.pass ? "[pass]" : "[fail]") << ',' << fmt(o.value) << ','
        << o.p_or_band << '\n';
    tests.push_back({{"kind", o.kind},
                     {"statistic", o.statistic},
                     {"cells", o.scope},
                     {"n", o.n},
                     {"m", o.m},
                     {"method", o.method},
                     {"value", o.value},
                     {"p_or_band", o.p_or_band},
                     {"pass", o.pass},
                     {"detail", o.detail}});
  }

  ojson doc;
  doc["provenance"] = {{"name", cfg.name},
                       {"config_hash", hex64(cfg.hash)},
                       {"seed", cfg.seed},
                       {"version", std::string(kVersion)},
                       {"rng", std::string(kRngName)},
                       {"csv_schema", std::string(kReportCsvHeader)}};
  doc["params"] = {{"a", cfg.params.a},
                   {"sigma", cfg.params.sigma},
                   {"z_factor", cfg.params.z_factor},
                   {"mu_exponent", cfg.params.mu_exponent},
                   {"omega_log_exponent", cfg.params.omega_log_exponent}};
  doc["cells"] = cells;
  doc["tests"] = tests;
  doc["summary"] = {{"tests", report.outcomes.size()}, {"failed", report.tests_failed}};
  report.csv = csv.str();
  report.json = doc.dump(2) + "\n";
  return report;
}

void write_report(const Report& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot create " + dir + ": " + ec.message());
  for (const auto& [name, body] : {std::pair<std::string, const std::string*>{"report.csv", &report.csv},
                                   {"report.json", &report.json}}) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
    out << *body;
    if (!out) fail(ErrorCode::kIoError, "write failed for " + path);
  }
}

}  // namespace brpa
