#include <iostream>

#include "CLI11.hpp"
#include "symrep/pipeline.hpp"

using namespace symrep;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> cache_dir, output, format;
  std::optional<std::size_t> jobs;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON job configuration")->required()->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "override the configured seed");
  app->add_option("--cache-dir", c.cache_dir, "persistent cache directory");
  app->add_option("--output", c.output, "report path (default: stdout)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

JobConfig resolve(const Common& c) {
  JobConfig cfg = load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.cache_dir) cfg.cache_dir = *c.cache_dir;
  if (c.output) cfg.output_path = *c.output;
  if (c.format) cfg.format = *c.format;
  if (c.jobs) cfg.jobs = *c.jobs;
  return cfg;
}

int deliver(const RunReport& r, const JobConfig& cfg) {
  if (cfg.output_path.empty()) {
    std::cout << (cfg.format == "csv" ? decompositions_csv(r.report) : canonical_json(r.report));
  } else {
    emit(r, cfg.format, cfg.output_path);
  }
  for (auto& e : r.report["errors"])
    std::cerr << "symrep: " << e["check"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
  return r.partial ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symrep: decompositions of symmetric powers of modular representations"};
  app.require_subcommand(1);

  Common analyze_opts, decompose_opts, check_opts, explore_opts;
  auto* analyze = app.add_subcommand("analyze", "run every check listed in the config");
  add_common(analyze, analyze_opts);

  auto* decompose_cmd = app.add_subcommand("decompose", "decompose a single symmetric power");
  add_common(decompose_cmd, decompose_opts);
  std::size_t n = 0;
  decompose_cmd->add_option("--n", n, "degree")->required();

  auto* check = app.add_subcommand("check", "run one named check");
  add_common(check, check_opts);
  std::string check_name;
  check->add_option("--name", check_name, "check name")->required()->check(CLI::IsMember(known_checks()));

  auto* explore = app.add_subcommand("explore", "exploratory: observed registry growth along Sym^n");
  add_common(explore, explore_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      auto cfg = resolve(analyze_opts);
      return deliver(run(cfg), cfg);
    }
    if (*decompose_cmd) {
      auto cfg = resolve(decompose_opts);
      return deliver(run_single(cfg, n), cfg);
    }
    if (*check) {
      auto cfg = resolve(check_opts);
      cfg.checks = {check_name};
      return deliver(run(cfg), cfg);
    }
    if (*explore) {
      auto cfg = resolve(explore_opts);
      return deliver(run_explore(cfg), cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "symrep: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "symrep: fatal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
