#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "symrep/decomp.hpp"

namespace symrep {

using Json = nlohmann::json;

inline const char* kArtifactVersion = SYMREP_VERSION;

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> v{"decompose",     "description", "delta_vanishing",     "growth",
                                          "ramification",  "koszul",      "surface_progression", "char_growth"};
  return v;
}

struct JobConfig {
  std::uint32_t p = 0, e = 1;
  std::vector<std::string> generators;  // matrix text
  std::size_t d = 0;
  std::size_t n_max = 0;
  std::vector<std::size_t> m_candidates;  // empty: divisors of #G^2
  std::set<std::string> checks;
  std::uint64_t seed = 0;
  std::string cache_dir;
  std::string format = "json";
  std::string output_path;
  std::size_t jobs = 1;
  std::size_t max_dim = 4096;
  int dmax = -1;             // description degree bound, -1: d + 1
  std::size_t holdout = 3;
  std::size_t koszul_t_limit = 0;  // 0: d + 4
  std::size_t koszul_t_span = 4;
};

// Throws ConfigError with a readable message.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);
Json config_echo(const JobConfig& cfg);
GroupPtr config_group(const JobConfig& cfg);

struct RunReport {
  Json report;   // deterministic part
  Json sidecar;  // timings, cache statistics
  bool partial = false;
};

RunReport run(const JobConfig& cfg);
// Decomposition of a single degree (the `decompose` subcommand).
RunReport run_single(const JobConfig& cfg, std::size_t n);
// Observed registry growth along Sym^n; reports, proves nothing.
RunReport run_explore(const JobConfig& cfg);

std::string canonical_json(const Json& j);
Json dv_json(const DecompVector& v);
DecompVector dv_from_json(const Json& j);

// Writes report (and sidecar next to it). CSV writes <path> with the
// decomposition table plus <stem>_characters.csv and <stem>_growth.csv.
void emit(const RunReport& r, const std::string& format, const std::string& path);
std::string decompositions_csv(const Json& report);

std::string sha256_hex(const std::string& data);

}  // namespace symrep
