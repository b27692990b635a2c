#ifndef BRPA_HARNESS_HPP_
#define BRPA_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brpa/generators.hpp"

namespace brpa {

/// Frozen CSV header of report.csv (schema version 1).
inline constexpr std::string_view kReportCsvHeader =
    "cell_id,n,m,method,statistic,mean,stderr,test,value,p_or_band";

struct CellSpec {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  GenMethod method = GenMethod::kExponential;
  std::optional<double> delta;
};

struct StatisticSpec {
  std::string label;  // as written, e.g. "scaled_root:2"
  std::string name;   // before the colon
  std::string arg;    // after the colon, may be empty
};

struct ExperimentParams {
  double a = 0.3;                   // prefix exponent for degree statistics
  double sigma = 0.25;              // tail fraction excluded from degree caps
  double z_factor = 1.1;            // cap constant as a multiple of z(sigma)
  double mu_exponent = 0.2;         // prefix_maxtree uses floor(n^mu_exponent)
  double omega_log_exponent = 1.0 / 3.0;  // connectors use floor(log^e n)
};

struct TestSpec {
  std::string kind;
  std::string statistic;
  std::vector<std::uint32_t> n_filter;  // empty: all
  std::vector<std::uint32_t> m_filter;
  // chi-square-vs-oracle
  double max_tv = 0.01;
  double min_p = 0.001;
  // loglog-fit
  std::string model = "log";  // log | log2
  std::string target;         // loop_slope | parallel_slope | "" (use slope)
  double slope = 0.0;
  double rel_tol = 0.15;
  // frequency-vs-formula
  std::string formula;  // connected_g1_exact | connect_probability
  double max_se = 3.0;
  // fraction-at-least
  double min_fraction = 0.95;
  // ks-vs-mixture
  double max_d = 0.02;
  double moment_rel_tol = 0.05;
  unsigned max_moment = 4;
  // trend
  std::string aggregate = "median";  // median | mean
  std::string direction = "decreasing";
  // always-equal
  double value = 0.0;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  std::vector<CellSpec> cells;
  std::vector<StatisticSpec> statistics;
  ExperimentParams params;
  std::vector<TestSpec> tests;
  std::uint64_t hash = 0;  // FNV-1a of the canonical JSON dump
};

/// Strict parse: unknown keys, statistics, tests or unmet requirements throw
/// config-error before any sampling.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

struct TestOutcome {
  std::string kind;
  std::string statistic;
  std::string scope;  // cell ids joined by '+'
  std::uint32_t n = 0;  // 0 when the test spans several n
  std::uint32_t m = 0;
  std::string method;
  double value = 0.0;
  std::string p_or_band;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string csv;
  std::string json;
  std::vector<TestOutcome> outcomes;
  int tests_failed = 0;
};

/// Runs every cell; run i of cell c uses seed derive_seed(derive_seed(seed,
/// c), i). Output is identical for every worker count.
Report run_experiment(const ExperimentConfig& config, unsigned workers);

/// Writes report.csv and report.json into `dir` (created if missing).
void write_report(const Report& report, const std::string& dir);

/// BRPA_WORKERS when set to a positive integer, else 1.
unsigned default_workers();

std::string_view library_version();

}  // namespace brpa

#endif  // BRPA_HARNESS_HPP_
