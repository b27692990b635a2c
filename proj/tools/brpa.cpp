#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brpa/brpa.h"

namespace {

int report(brpa_status status) {
  if (status != BRPA_OK) {
    std::fprintf(stderr, "brpa: %s: %s\n", brpa_status_string(status), brpa_last_error());
  }
  return static_cast<int>(status);
}

int emit(brpa_status status, char* text) {
  if (status == BRPA_OK && text != nullptr) std::fputs(text, stdout);
  brpa_string_free(text);
  return report(status);
}

brpa_format parse_format(const std::string& name) {
  return name == "json" ? BRPA_FORMAT_JSON : BRPA_FORMAT_CSV;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearized chord diagram graphs: sampling, statistics, bounds and exact laws"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(brpa_version()));

  auto* gen = app.add_subcommand("gen", "Sample a graph and write it to a file");
  std::uint32_t gen_n = 0, gen_m = 1;
  std::string gen_method = "exp", gen_out;
  std::uint64_t gen_seed = 0;
  std::optional<double> gen_delta;
  gen->add_option("--n", gen_n, "Number of vertices")->required();
  gen->add_option("--m", gen_m, "Edges per vertex")->required();
  gen->add_option("--method", gen_method, "exp|uniform|matching|seq")->required();
  gen->add_option("--delta", gen_delta, "Attachment offset (seq, m = 1)");
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Output graph file")->required();

  auto* stats = app.add_subcommand("stats", "Statistics of a graph file");
  std::string stats_in, stats_format = "csv";
  double stats_a = 0.3;
  stats->add_option("--in", stats_in, "Graph file")->required();
  stats->add_option("--report", stats_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  stats->add_option("--a", stats_a, "Prefix exponent for degree statistics");

  auto* maxtree = app.add_subcommand("maxtree", "Maximal recursive trees of an m = 1 graph");
  std::string tree_in;
  std::uint32_t tree_root = 0, tree_mu = 0;
  maxtree->add_option("--in", tree_in, "Graph file")->required();
  maxtree->add_option("--root", tree_root, "Root whose scaled tree size is reported");
  maxtree->add_option("--mu", tree_mu, "Prefix for the prefix tree check");

  auto* bounds = app.add_subcommand("bounds", "Evaluate rates, bounds and limit laws");
  std::string bounds_kind, bounds_params, bounds_table = "json";
  bounds->add_option("kind", bounds_kind, "example1|example2|example3|pairbound|connect|zsigma|mixture")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "pairbound", "connect", "zsigma", "mixture"}));
  bounds->add_option("--params", bounds_params, "key=value,key=value");
  bounds->add_option("--table", bounds_table, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* oracle = app.add_subcommand("oracle", "Exact law by enumerating all pairings");
  std::uint32_t oracle_n = 0, oracle_m = 1, oracle_mu = 0;
  std::string oracle_stat, oracle_format = "csv";
  oracle->add_option("--n", oracle_n, "Number of vertices")->required();
  oracle->add_option("--m", oracle_m, "Edges per vertex")->required();
  oracle->add_option("--statistic", oracle_stat, "Statistic name")->required();
  oracle->add_option("--mu", oracle_mu, "Prefix for prefix_maxtree");
  oracle->add_option("--format", oracle_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* mc = app.add_subcommand("mc", "Run a Monte Carlo experiment config");
  std::string mc_config, mc_out;
  unsigned mc_workers = 0;
  mc->add_option("--config", mc_config, "Experiment JSON")->required();
  mc->add_option("--out", mc_out, "Output directory")->required();
  mc->add_option("--workers", mc_workers, "Worker threads (default BRPA_WORKERS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(BRPA_INVALID_ARGUMENT);
  }

  if (*gen) {
    brpa_method method;
    brpa_status s = brpa_method_from_name(gen_method.c_str(), &method);
    if (s != BRPA_OK) return report(s);
    brpa_graph* g = nullptr;
    s = brpa_generate(gen_n, gen_m, method, gen_seed, gen_delta ? &*gen_delta : nullptr, &g);
    if (s == BRPA_OK) s = brpa_graph_write(g, gen_out.c_str());
    brpa_graph_free(g);
    return report(s);
  }
  if (*stats) {
    brpa_graph* g = nullptr;
    brpa_status s = brpa_graph_read(stats_in.c_str(), &g);
    char* text = nullptr;
    if (s == BRPA_OK) s = brpa_stats_report(g, stats_a, parse_format(stats_format), &text);
    brpa_graph_free(g);
    return emit(s, text);
  }
  if (*maxtree) {
    brpa_graph* g = nullptr;
    brpa_status s = brpa_graph_read(tree_in.c_str(), &g);
    char* text = nullptr;
    if (s == BRPA_OK) s = brpa_maxtree_report(g, tree_root, tree_mu, &text);
    brpa_graph_free(g);
    return emit(s, text);
  }
  if (*bounds) {
    char* text = nullptr;
    const brpa_status s =
        brpa_bounds(bounds_kind.c_str(), bounds_params.c_str(), parse_format(bounds_table), &text);
    return emit(s, text);
  }
  if (*oracle) {
    char* text = nullptr;
    const brpa_status s = brpa_oracle(oracle_n, oracle_m, oracle_stat.c_str(), oracle_mu,
                                      parse_format(oracle_format), &text);
    return emit(s, text);
  }
  int failed = 0;
  const brpa_status s = brpa_mc_run(mc_config.c_str(), mc_out.c_str(), mc_workers, &failed);
  if (s == BRPA_OK || s == BRPA_TEST_FAILED) {
    std::printf("%s/report.csv written; %d test(s) failed\n", mc_out.c_str(), failed);
  }
  return report(s);
}
