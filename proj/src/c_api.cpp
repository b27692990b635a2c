#include "brpa/brpa.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "brpa/analytic.hpp"
#include "brpa/error.hpp"
#include "brpa/exact_oracle.hpp"
#include "brpa/generators.hpp"
#include "brpa/graph_io.hpp"
#include "brpa/graph_stats.hpp"
#include "brpa/harness.hpp"
#include "brpa/maxtree.hpp"

struct brpa_graph {
  brpa::GraphFileInfo info;
  brpa::MultiGraph graph;
  std::optional<brpa::ExponentialProcess> process;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string last_error;

brpa_status set_error(brpa_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Fn>
brpa_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return BRPA_OK;
  } catch (const brpa::Error& e) {
    return set_error(static_cast<brpa_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BRPA_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BRPA_INTERNAL, e.what());
  } catch (...) {
    return set_error(BRPA_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  brpa::require(p != nullptr, std::string(what) + " must not be NULL");
}

brpa::GenMethod to_method(brpa_method m) {
  switch (m) {
    case BRPA_METHOD_SEQ: return brpa::GenMethod::kSequential;
    case BRPA_METHOD_UNIFORM: return brpa::GenMethod::kUniformCoords;
    case BRPA_METHOD_MATCHING: return brpa::GenMethod::kUniformMatching;
    case BRPA_METHOD_EXP: return brpa::GenMethod::kExponential;
  }
  brpa::fail(brpa::ErrorCode::kInvalidArgument, "unknown method");
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(15);
  s << x;
  return s.str();
}

json jnum(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

// ---- bounds -------------------------------------------------------------------

class Params {
 public:
  Params(const char* text, std::initializer_list<const char*> allowed) {
    const std::string s = text ? text : "";
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      const std::string item = s.substr(pos, comma - pos);
      pos = comma + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      brpa::require(eq != std::string::npos, "bounds: expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      bool known = false;
      for (const char* a : allowed) known |= key == a;
      brpa::require(known, "bounds: unknown parameter '" + key + "'");
      char* end = nullptr;
      const double v = std::strtod(value.c_str(), &end);
      brpa::require(!value.empty() && *end == '\0', "bounds: '" + key + "' is not a number");
      values_[key] = v;
    }
  }

  bool has(const std::string& k) const { return values_.count(k) != 0; }
  double get(const std::string& k, double fallback) const {
    const auto it = values_.find(k);
    return it == values_.end() ? fallback : it->second;
  }
  double need(const std::string& k) const {
    const auto it = values_.find(k);
    brpa::require(it != values_.end(), "bounds: parameter '" + k + "' is required");
    return it->second;
  }
  std::uint64_t count(const std::string& k) const {
    const double v = need(k);
    brpa::require(v >= 0 && v == std::floor(v) && v < 1.8e19, "bounds: '" + k + "' must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }

 private:
  std::map<std::string, double> values_;
};

// Rows of a table; each row is an ordered list of (column, value).
using Row = std::vector<std::pair<std::string, json>>;

std::string render(const std::string& kind, const std::vector<Row>& rows, brpa_format format) {
  if (format == BRPA_FORMAT_JSON) {
    json doc;
    doc["kind"] = kind;
    json list = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (const auto& [k, v] : row) obj[k] = v;
      list.push_back(obj);
    }
    doc["rows"] = list;
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (rows.empty()) return out;
  for (std::size_t i = 0; i < rows.front().size(); ++i) {
    out += (i ? "," : "") + rows.front()[i].first;
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const json& v = row[i].second;
      std::string cell;
      if (v.is_string()) {
        cell = v.get<std::string>();
      } else if (v.is_number_float()) {
        cell = num(v.get<double>());
      } else {
        cell = v.dump();
      }
      out += (i ? "," : "") + cell;
    }
    out += '\n';
  }
  return out;
}

std::string intervals_text(const std::vector<std::pair<double, double>>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? ";" : "") + std::string("(") + num(v[i].first) + " " + num(v[i].second) + ")";
  }
  return s;
}

std::string roots_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

std::vector<Row> bounds_rows(const std::string& kind, const char* text) {
  std::vector<Row> rows;
  if (kind == "example1") {
    const Params p(text, {"m", "beta", "eps", "c"});
    const double m = p.get("m", 16), eps = p.get("eps", 6.0 / 7.0), c = p.get("c", 0.5);
    std::vector<double> betas = p.has("beta") ? std::vector<double>{p.need("beta")}
                                              : std::vector<double>{0.43, 0.45, 0.47, 0.49, 0.492};
    for (double beta : betas) {
      const auto r = brpa::example1_rate(m, beta, eps, c);
      rows.push_back({{"m", m}, {"beta", beta}, {"eps", eps}, {"c", c},
                      {"rate_g", jnum(r.first)}, {"rate_spread", jnum(r.second)}});
    }
  } else if (kind == "example2") {
    const Params p(text, {"m", "rho", "x", "eps", "c"});
    const double m = p.get("m", 500), rho = p.get("rho", 1), eps = p.get("eps", 0.6), c = p.get("c", 0.5);
    if (p.has("x")) {
      const double x = p.need("x");
      const auto r = brpa::example2_rate(m, rho, x, eps, c);
      rows.push_back({{"m", m}, {"rho", rho}, {"x", x}, {"eps", eps}, {"c", c},
                      {"rate_1", jnum(r.first)}, {"rate_2", jnum(r.second)}});
    } else {
      for (int branch = 1; branch <= 2; ++branch) {
        const auto z = brpa::example2_zeros(branch, m, rho, eps, c);
        rows.push_back({{"m", m}, {"rho", rho}, {"eps", eps}, {"c", c}, {"branch", branch},
                        {"zeros", roots_text(z.roots)},
                        {"positive_on", intervals_text(z.positive_intervals)}});
      }
    }
  } else if (kind == "example3") {
    const Params p(text, {"m", "gamma", "x", "eps", "c"});
    const double m = p.get("m", 100), gamma = p.get("gamma", 1), eps = p.get("eps", 0.6), c = p.get("c", 0.5);
    if (p.has("x")) {
      const double x = p.need("x");
      const auto r = brpa::example3_rate(m, gamma, x, eps, c);
      rows.push_back({{"m", m}, {"gamma", gamma}, {"x", x}, {"eps", eps}, {"c", c},
                      {"rate_g", jnum(r.first)}, {"rate_spread", jnum(r.second)}});
    } else {
      const auto x2 = brpa::example3_x2(m, gamma, eps);
      rows.push_back({{"m", m}, {"gamma", gamma}, {"eps", eps}, {"c", c},
                      {"h", brpa::example3_h(gamma)},
                      {"x_1", jnum(brpa::example3_x1(m, gamma, eps, c))},
                      {"x_2", x2 ? json(*x2) : json("NA")},
                      {"m_1", jnum(brpa::example3_m1(gamma, eps, c))},
                      {"m_2", jnum(brpa::example3_m2(gamma, eps))},
                      {"x_max", 1.0 / (gamma + 2.0)}});
    }
  } else if (kind == "pairbound") {
    const Params p(text, {"n", "m", "mu", "nu", "eps", "delta", "c", "r"});
    brpa::IsolationBoundParams q;
    q.n = p.count("n");
    q.m = static_cast<std::uint32_t>(p.count("m"));
    q.mu = p.count("mu");
    q.nu = p.count("nu");
    q.eps = p.get("eps", 0.5);
    q.c = p.get("c", 0.5);
    if (p.has("delta")) q.delta = p.need("delta");
    if (p.has("r")) q.r = p.count("r");
    const auto b = brpa::pair_isolation_bound(q);
    Row row{{"n", q.n}, {"m", q.m}, {"mu", q.mu}, {"nu", q.nu}, {"eps", q.eps}, {"c", q.c}};
    row.push_back({"r", q.r ? json(*q.r) : json("NA")});
    row.push_back({"delta", b.delta});
    row.push_back({"spread_exponent", jnum(b.spread_exponent)});
    row.push_back({"g_exponent", jnum(b.g_exponent)});
    row.push_back({"log_count", jnum(b.log_count)});
    row.push_back({"log_bound", jnum(b.log_bound)});
    row.push_back({"bound", jnum(b.bound)});
    row.push_back({"g_rate_per_vertex", jnum(b.g_rate_per_vertex)});
    row.push_back({"spread_rate_per_vertex", jnum(b.spread_rate_per_vertex)});
    rows.push_back(row);
  } else if (kind == "connect") {
    const Params p(text, {"n", "m"});
    const auto n = static_cast<std::uint32_t>(p.count("n"));
    const auto m = static_cast<std::uint32_t>(p.get("m", 1));
    Row row{{"n", n}, {"m", m}, {"probability", jnum(brpa::connect_probability(n, m))}};
    if (m == 1) row.push_back({"asymptote", 0.5 * std::sqrt(std::numbers::pi / n)});
    rows.push_back(row);
  } else if (kind == "zsigma") {
    const Params p(text, {"sigma", "rho"});
    std::vector<double> sigmas = p.has("sigma") ? std::vector<double>{p.need("sigma")}
                                                : std::vector<double>{0.01, 0.1, 0.25, 0.5, 0.75};
    for (double s : sigmas) {
      Row row{{"sigma", s}, {"z", brpa::z_sigma(s)}};
      if (p.has("rho")) {
        row.push_back({"rho", p.need("rho")});
        row.push_back({"eps_rho", brpa::eps_rho(p.need("rho"))});
      }
      rows.push_back(row);
    }
  } else if (kind == "mixture") {
    const Params p(text, {"r", "delta", "x"});
    const auto r = static_cast<std::uint32_t>(p.count("r"));
    std::optional<double> delta;
    if (p.has("delta")) delta = p.need("delta");
    const auto law = brpa::beta_mixture(r, delta);
    for (const auto& comp : law.components()) {
      Row row{{"r", r}, {"delta", delta ? json(*delta) : json("NA")}, {"weight", comp.weight},
              {"alpha", comp.alpha}, {"beta", comp.beta}};
      for (unsigned l = 1; l <= 4; ++l) row.push_back({"moment_" + std::to_string(l), law.moment(l)});
      if (p.has("x")) {
        row.push_back({"x", p.need("x")});
        row.push_back({"pdf", jnum(law.pdf(p.need("x")))});
        row.push_back({"cdf", law.cdf(p.need("x"))});
      }
      rows.push_back(row);
    }
  } else {
    brpa::fail(brpa::ErrorCode::kInvalidArgument, "bounds: unknown kind '" + kind + "'");
  }
  return rows;
}

}  // namespace

extern "C" {

const char* brpa_version(void) {
  static const std::string v(brpa::library_version());
  return v.c_str();
}

const char* brpa_last_error(void) { return last_error.c_str(); }

const char* brpa_status_string(brpa_status status) {
  switch (status) {
    case BRPA_OK: return "ok";
    case BRPA_INVALID_ARGUMENT: return "invalid-argument";
    case BRPA_UNSUPPORTED_METHOD: return "unsupported-method";
    case BRPA_RESOURCE_LIMIT: return "resource-limit";
    case BRPA_CONFIG_ERROR: return "config-error";
    case BRPA_IO_ERROR: return "io-error";
    case BRPA_TEST_FAILED: return "test-failed";
    case BRPA_INTERNAL: return "internal";
  }
  return "unknown";
}

void brpa_string_free(char* s) { std::free(s); }

brpa_status brpa_method_from_name(const char* name, brpa_method* out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    const auto m = brpa::method_from_name(name);
    brpa::require(m.has_value(), std::string("unknown method '") + name + "'");
    switch (*m) {
      case brpa::GenMethod::kSequential: *out = BRPA_METHOD_SEQ; break;
      case brpa::GenMethod::kUniformCoords: *out = BRPA_METHOD_UNIFORM; break;
      case brpa::GenMethod::kUniformMatching: *out = BRPA_METHOD_MATCHING; break;
      case brpa::GenMethod::kExponential: *out = BRPA_METHOD_EXP; break;
    }
  });
}

brpa_status brpa_generate(uint32_t n, uint32_t m, brpa_method method, uint64_t seed,
                          const double* delta, brpa_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const brpa::GenMethod gm = to_method(method);
    brpa::Rng rng(seed);
    std::optional<double> d;
    if (delta) d = *delta;
    brpa::Sample s = brpa::generate(n, m, gm, rng, d);
    *out = new brpa_graph{{n, m, std::string(brpa::method_name(gm)), seed},
                          std::move(s.graph), std::move(s.process)};
  });
}

void brpa_graph_free(brpa_graph* g) { delete g; }

brpa_status brpa_graph_read(const char* path, brpa_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    brpa::GraphFile f = brpa::read_graph_file(path);
    *out = new brpa_graph{std::move(f.info), std::move(f.graph), std::nullopt};
  });
}

brpa_status brpa_graph_write(const brpa_graph* g, const char* path) {
  return guarded([&] {
    need(g, "graph");
    need(path, "path");
    brpa::write_graph_file(path, g->graph, g->info);
  });
}

uint32_t brpa_graph_n(const brpa_graph* g) { return g ? g->graph.n() : 0; }
uint32_t brpa_graph_m(const brpa_graph* g) { return g ? g->graph.m() : 0; }

uint64_t brpa_graph_edge_classes(const brpa_graph* g) {
  if (!g) return 0;
  std::uint64_t classes = 0;
  for (brpa::Vertex a = 1; a <= g->graph.n(); ++a) classes += g->graph.upper_neighbors(a).size();
  return classes;
}

brpa_status brpa_graph_degree(const brpa_graph* g, uint32_t v, uint64_t* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->graph.degree(v);
  });
}

brpa_status brpa_graph_multiplicity(const brpa_graph* g, uint32_t a, uint32_t b, uint32_t* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->graph.multiplicity(a, b);
  });
}

brpa_status brpa_stats_report(const brpa_graph* g, double a, brpa_format format, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = nullptr;
    const brpa::MultiGraph& graph = g->graph;
    const std::uint32_t m = graph.m();
    brpa::require(a > 0.0 && a < static_cast<double>(m) / (m + 2), "stats: need 0 < a < m/(m+2)");

    // Files from the exp method are rebuilt from their seed to recover W.
    std::optional<brpa::ExponentialProcess> rebuilt;
    const brpa::ExponentialProcess* process = g->process ? &*g->process : nullptr;
    if (!process && g->info.method == "exp") {
      brpa::Rng rng(g->info.seed);
      brpa::Sample s = brpa::generate(graph.n(), m, brpa::GenMethod::kExponential, rng);
      if (s.graph == graph) {
        rebuilt = std::move(s.process);
        process = &*rebuilt;
      }
    }
    std::optional<double> l1;
    if (process) l1 = brpa::degree_report(graph, process, a).l1_statistic;

    const std::uint64_t loops = brpa::loop_count(graph);
    const std::uint64_t pairs = brpa::parallel_pair_count(graph);
    const std::uint64_t min_deg = brpa::min_prefix_degree(graph, a);
    const bool connected = brpa::is_connected(graph);
    if (format == BRPA_FORMAT_JSON) {
      json doc{{"n", graph.n()},
               {"m", m},
               {"method", g->info.method},
               {"seed", g->info.seed},
               {"a", a},
               {"L_n", loops},
               {"P_n", pairs},
               {"min_prefix_degree", min_deg},
               {"l1_degree_stat", l1 ? json(*l1) : json(nullptr)},
               {"connected", connected}};
      *out = dup_string(doc.dump(2) + "\n");
    } else {
      std::string csv = "n,m,method,seed,L_n,P_n,min_prefix_degree,l1_degree_stat,connected\n";
      csv += std::to_string(graph.n()) + "," + std::to_string(m) + "," + g->info.method + "," +
             std::to_string(g->info.seed) + "," + std::to_string(loops) + "," + std::to_string(pairs) +
             "," + std::to_string(min_deg) + "," + (l1 ? num(*l1) : "NA") + "," +
             (connected ? "1" : "0") + "\n";
      *out = dup_string(csv);
    }
  });
}

brpa_status brpa_maxtree_report(const brpa_graph* g, uint32_t root, uint32_t mu, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = nullptr;
    const brpa::MaxTreeForest f = brpa::forest_m1(g->graph);
    std::uint32_t largest = 0;
    for (auto s : f.sizes) largest = std::max(largest, s);
    json doc;
    doc["n"] = g->graph.n();
    doc["roots"] = f.roots;
    doc["sizes"] = f.sizes;
    doc["largest"] = largest;
    if (root != 0) {
      doc["scaled"] = {{"root", root}, {"value", brpa::scaled_root_component(f, root)}};
    } else {
      doc["scaled"] = nullptr;
    }
    if (mu != 0) {
      doc["prefix_maxtree"] = {{"mu", mu}, {"present", brpa::prefix_maxtree_present(g->graph, mu)}};
    }
    *out = dup_string(doc.dump(2) + "\n");
  });
}

brpa_status brpa_bounds(const char* kind, const char* params, brpa_format format, char** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    *out = nullptr;
    *out = dup_string(render(kind, bounds_rows(kind, params), format));
  });
}

brpa_status brpa_oracle(uint32_t n, uint32_t m, const char* statistic, uint32_t mu,
                        brpa_format format, char** out) {
  return guarded([&] {
    need(statistic, "statistic");
    need(out, "out");
    *out = nullptr;
    const auto s = brpa::statistic_from_name(statistic);
    brpa::require(s.has_value(), std::string("oracle: unknown statistic '") + statistic + "'");
    const brpa::ExactDistribution d = brpa::exact_distribution(n, m, *s, mu);
    if (format == BRPA_FORMAT_JSON) {
      json doc;
      doc["statistic"] = d.statistic;
      doc["n"] = n;
      doc["m"] = m;
      doc["total"] = d.total;
      json support = json::array();
      for (const auto& [key, count] : d.counts) {
        support.push_back({{"outcome", key},
                           {"count", count},
                           {"probability", brpa::to_string(d.probability(key))},
                           {"value", static_cast<double>(count) / static_cast<double>(d.total)}});
      }
      doc["support"] = support;
      *out = dup_string(doc.dump(2) + "\n");
    } else {
      std::string csv = "outcome,count,probability,value\n";
      for (const auto& [key, count] : d.counts) {
        csv += "\"" + key + "\"," + std::to_string(count) + "," + brpa::to_string(d.probability(key)) +
               "," + num(static_cast<double>(count) / static_cast<double>(d.total)) + "\n";
      }
      *out = dup_string(csv);
    }
  });
}

brpa_status brpa_mc_run(const char* config_path, const char* out_dir, unsigned workers,
                        int* tests_failed) {
  int failed = 0;
  const brpa_status status = guarded([&] {
    need(config_path, "config path");
    need(out_dir, "output directory");
    const brpa::ExperimentConfig cfg = brpa::load_config(config_path);
    const brpa::Report report =
        brpa::run_experiment(cfg, workers == 0 ? brpa::default_workers() : workers);
    brpa::write_report(report, out_dir);
    failed = report.tests_failed;
  });
  if (tests_failed) *tests_failed = failed;
  if (status != BRPA_OK) return status;
  if (failed > 0) {
    return set_error(BRPA_TEST_FAILED, std::to_string(failed) + " declared test(s) failed");
  }
  return BRPA_OK;
}

}  // extern "C"
