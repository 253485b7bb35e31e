#include "symrep/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "symrep/characters.hpp"
#include "symrep/geometry.hpp"
#include "symrep/koszul.hpp"
#include "symrep/polydesc.hpp"

namespace fs = std::filesystem;

namespace symrep {

std::string sha256_hex(const std::string& data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), out, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[out[i] >> 4];
    s += hex[out[i] & 15];
  }
  return s;
}

std::string canonical_json(const Json& j) { return j.dump(2) + "\n"; }

Json dv_json(const DecompVector& v) {
  Json a = Json::array();
  for (auto [id, k] : v) a.push_back({id, k});
  return a;
}

DecompVector dv_from_json(const Json& j) {
  DecompVector v;
  for (const auto& e : j) v[e.at(0).get<ClassId>()] = e.at(1).get<std::int64_t>();
  return v;
}

// ---------------------------------------------------------------- config

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())), '\n'));
}

template <class T>
T get_num(const Json& j, const char* key, const char* what) {
  if (!j.is_number_integer() || (std::is_unsigned_v<T> && j.get<long long>() < 0))
    throw ConfigError(std::string(what) + ": '" + key + "' must be a non-negative integer");
  return j.get<T>();
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> allowed{"field", "generators", "n_max", "m_candidates", "checks",
                                               "seed",  "cache_dir",  "output", "jobs",        "max_dim",
                                               "dmax",  "holdout",    "koszul"};
    if (!allowed.count(it.key())) throw ConfigError("config: unknown key '" + it.key() + "'");
  }
  JobConfig c;
  if (!j.contains("seed")) throw ConfigError("seed required");
  c.seed = get_num<std::uint64_t>(j["seed"], "seed", "config");
  if (!j.contains("field") || !j["field"].is_object()) throw ConfigError("config: 'field' {p, e} required");
  c.p = get_num<std::uint32_t>(j["field"].value("p", Json(0)), "p", "field");
  c.e = get_num<std::uint32_t>(j["field"].value("e", Json(1)), "e", "field");
  try {
    Field::get(c.p, c.e);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("field: ") + e.what());
  }
  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
    throw ConfigError("config: 'generators' must be a non-empty array of matrix texts");
  std::size_t size = 0;
  auto f = Field::get(c.p, c.e);
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const Json& g = j["generators"][i];
    if (!g.is_string()) throw ConfigError("generator " + std::to_string(i) + ": must be a string");
    Mat m;
    try {
      m = from_text(f, g.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError("generator " + std::to_string(i) + ": " + e.what());
    }
    if (m.rows() != m.cols())
      throw ConfigError("generator " + std::to_string(i) + ": matrix is not square (" + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ")");
    if (i == 0) size = m.rows();
    if (m.rows() != size) throw ConfigError("generator " + std::to_string(i) + ": size differs from generator 0");
    if (!is_invertible(m)) throw ConfigError("generator " + std::to_string(i) + ": matrix is singular");
    c.generators.push_back(to_text(m));
  }
  if (size < 2) throw ConfigError("config: generators must be at least 2x2 (d >= 1)");
  c.d = size - 1;
  if (!j.contains("n_max")) throw ConfigError("config: 'n_max' required");
  c.n_max = get_num<std::size_t>(j["n_max"], "n_max", "config");
  if (c.n_max < 4) throw ConfigError("config: n_max must be >= 4");
  if (j.contains("m_candidates")) {
    if (!j["m_candidates"].is_array()) throw ConfigError("config: 'm_candidates' must be an array");
    for (auto& x : j["m_candidates"]) {
      auto m = get_num<std::size_t>(x, "m_candidates", "config");
      if (m == 0) throw ConfigError("config: m_candidates must be positive");
      c.m_candidates.push_back(m);
    }
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("config: 'checks' must be an array");
    for (auto& x : j["checks"]) {
      if (!x.is_string()) throw ConfigError("config: check names must be strings");
      auto name = x.get<std::string>();
      if (name == "all") {
        for (auto& k : known_checks()) c.checks.insert(k);
        continue;
      }
      if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
        throw ConfigError("config: unknown check '" + name + "'");
      c.checks.insert(name);
    }
  } else {
    c.checks.insert("decompose");
  }
  if (j.contains("cache_dir")) {
    if (!j["cache_dir"].is_string()) throw ConfigError("config: 'cache_dir' must be a string");
    c.cache_dir = j["cache_dir"].get<std::string>();
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (!o.is_object()) throw ConfigError("config: 'output' must be an object");
    c.format = o.value("format", std::string("json"));
    c.output_path = o.value("path", std::string());
  }
  if (c.format != "json" && c.format != "csv") throw ConfigError("config: output format must be json or csv");
  if (j.contains("jobs")) c.jobs = std::max<std::size_t>(1, get_num<std::size_t>(j["jobs"], "jobs", "config"));
  if (j.contains("max_dim")) c.max_dim = get_num<std::size_t>(j["max_dim"], "max_dim", "config");
  if (j.contains("dmax")) c.dmax = get_num<int>(j["dmax"], "dmax", "config");
  if (j.contains("holdout")) c.holdout = get_num<std::size_t>(j["holdout"], "holdout", "config");
  if (j.contains("koszul")) {
    const Json& k = j["koszul"];
    if (k.contains("t_limit")) c.koszul_t_limit = get_num<std::size_t>(k["t_limit"], "t_limit", "koszul");
    if (k.contains("t_span")) c.koszul_t_span = get_num<std::size_t>(k["t_span"], "t_span", "koszul");
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Json config_echo(const JobConfig& c) {
  Json j;
  j["field"] = {{"p", c.p}, {"e", c.e}};
  j["generators"] = c.generators;
  j["d"] = c.d;
  j["n_max"] = c.n_max;
  j["m_candidates"] = c.m_candidates;
  j["checks"] = std::vector<std::string>(c.checks.begin(), c.checks.end());
  j["seed"] = c.seed;
  j["max_dim"] = c.max_dim;
  j["dmax"] = c.dmax < 0 ? static_cast<int>(c.d) + 1 : c.dmax;
  j["holdout"] = c.holdout;
  j["koszul"] = {{"t_limit", c.koszul_t_limit ? c.koszul_t_limit : c.d + 4}, {"t_span", c.koszul_t_span}};
  // cache_dir, output and jobs do not affect results and stay out of the report
  return j;
}

GroupPtr config_group(const JobConfig& c) {
  auto f = Field::get(c.p, c.e);
  std::vector<Mat> gens;
  for (auto& t : c.generators) gens.push_back(from_text(f, t));
  return close_group(Representation::make(f, std::move(gens)));
}

// ---------------------------------------------------------------- cache

namespace {

struct Cache {
  fs::path root;
  std::string group_key;
  std::size_t hits = 0, misses = 0, writes = 0;

  bool enabled() const { return !root.empty(); }

  static std::string key_for(const JobConfig& c, std::optional<std::size_t> n) {
    Json k{{"field", {c.p, c.e}}, {"generators", c.generators}, {"version", kArtifactVersion}};
    if (n) k["n"] = *n;
    return sha256_hex(k.dump());
  }

  void write_atomic(const fs::path& p, const std::string& data) {
    fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      out << data;
    }
    fs::rename(tmp, p);
    ++writes;
  }

  static std::optional<Json> read(const fs::path& p) {
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      return Json::parse(in);
    } catch (...) {
      return std::nullopt;
    }
  }

  fs::path registry_path() const { return root / "registry" / (group_key + ".json"); }
  fs::path sym_path(std::size_t n) const { return root / "sym" / group_key / (std::to_string(n) + ".json"); }

  // Returns the number of classes loaded.
  std::size_t load_registry(Registry& reg) {
    if (!enabled()) return 0;
    auto j = read(registry_path());
    if (!j || j->value("key", std::string()) != group_key) return 0;
    const GroupPtr& g = reg.group();
    for (const auto& cls : (*j)["classes"]) {
      std::vector<Mat> gens;
      for (const auto& t : cls) gens.push_back(from_text(g->field(), t.get<std::string>()));
      reg.insert_unchecked(ModuleRep(g, std::move(gens)));
    }
    if (j->contains("regular")) reg.set_regular_vector(dv_from_json((*j)["regular"]));
    return reg.size();
  }

  void save_registry(const Registry& reg) {
    if (!enabled()) return;
    Json j;
    j["key"] = group_key;
    j["version"] = kArtifactVersion;
    j["classes"] = Json::array();
    for (ClassId id = 0; id < reg.size(); ++id) {
      Json gens = Json::array();
      for (const auto& a : reg.entry(id).rep.action()) gens.push_back(to_text(a));
      j["classes"].push_back(gens);
    }
    if (auto r = reg.regular_vector()) j["regular"] = dv_json(*r);
    write_atomic(registry_path(), j.dump());
  }

  std::optional<DecompVector> load_sym(const JobConfig& c, std::size_t n, std::size_t reg_size) {
    if (!enabled()) return std::nullopt;
    auto j = read(sym_path(n));
    if (!j || j->value("key", std::string()) != key_for(c, n)) {
      ++misses;
      return std::nullopt;
    }
    DecompVector v = dv_from_json((*j)["vector"]);
    for (auto [id, k] : v)
      if (id >= reg_size) {
        ++misses;
        return std::nullopt;
      }
    ++hits;
    return v;
  }

  void save_sym(const JobConfig& c, std::size_t n, const DecompVector& v) {
    if (!enabled()) return;
    Json j{{"key", key_for(c, n)}, {"n", n}, {"vector", dv_json(v)}};
    write_atomic(sym_path(n), j.dump());
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errs(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(jobs, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- stages

struct Context {
  const JobConfig& cfg;
  GroupPtr g;
  Registry reg;
  Cache cache;
  std::vector<DecompVector> decs;  // index n, contiguous from 0
  std::optional<std::string> decomp_error;
  std::optional<RamificationReport> ram;
  std::vector<BrauerChar> chars;
  Json report;
  Json sidecar;
  bool partial = false;

  Context(const JobConfig& c, GroupPtr grp) : cfg(c), g(std::move(grp)), reg(g) {}

  void error(const std::string& check, const std::string& msg) {
    report["errors"].push_back({{"check", check}, {"message", msg}});
    partial = true;
  }
};

void stage_decompose(Context& cx, std::size_t n_hi) {
  const auto t0 = Clock::now();
  const JobConfig& cfg = cx.cfg;
  cx.cache.load_registry(cx.reg);
  register_regular(cx.reg, derive_seed(cfg.seed, 0x7e6));
  const std::size_t vars = cx.g->rep.dim;
  SymPowerTower tower(cx.g, cfg.max_dim);
  constexpr std::size_t kWave = 8;
  for (std::size_t start = 0; start <= n_hi && !cx.decomp_error; start += kWave) {
    const std::size_t end = std::min(n_hi + 1, start + kWave);
    std::vector<std::size_t> todo;
    std::vector<ModuleRep> mods;
    std::vector<std::optional<DecompVector>> got(end - start);
    for (std::size_t n = start; n < end; ++n) {
      if (MonomialBasis::count(vars, n) > cfg.max_dim) {
        cx.decomp_error = "Sym^" + std::to_string(n) + " has dimension " +
                          std::to_string(MonomialBasis::count(vars, n)) + " exceeding the cap max_dim = " +
                          std::to_string(cfg.max_dim) + "; degrees >= " + std::to_string(n) + " skipped";
        break;
      }
      got[n - start] = cx.cache.load_sym(cfg, n, cx.reg.size());
      if (!got[n - start]) {
        tower.advance_to(n);
        todo.push_back(n);
        mods.push_back(tower.module());
      }
    }
    std::vector<LocalDecomposition> local(todo.size());
    parallel_for(todo.size(), cfg.jobs, [&](std::size_t i) {
      local[i] = decompose_local(mods[i], cx.reg, derive_seed(cfg.seed, todo[i]));
    });
    std::size_t li = 0;
    for (std::size_t n = start; n < end; ++n) {
      if (got[n - start]) {
        cx.decs.push_back(*got[n - start]);
      } else if (li < todo.size() && todo[li] == n) {
        cx.decs.push_back(merge_local(cx.reg, std::move(local[li++])));
        cx.cache.save_sym(cfg, n, cx.decs.back());
      } else {
        break;  // cap reached inside this wave
      }
    }
  }
  cx.cache.save_registry(cx.reg);
  if (cx.decomp_error) cx.error("decompose", *cx.decomp_error);
  Json d = Json::array();
  for (std::size_t n = 0; n < cx.decs.size(); ++n) d.push_back({{"n", n}, {"vector", dv_json(cx.decs[n])}});
  cx.report["decompositions"] = d;
  cx.report["regular"] = dv_json(*cx.reg.regular_vector());
  cx.sidecar["timing"]["decompose"] = seconds_since(t0);
}

Json poly_json(const Polynomial& p) {
  Json a = Json::array();
  for (auto& c : p.coeffs) a.push_back(rational_str(c));
  return a;
}

std::vector<std::size_t> m_candidates(const Context& cx) {
  return cx.cfg.m_candidates.empty() ? default_m_candidates(cx.g->order) : cx.cfg.m_candidates;
}

void check_description(Context& cx) {
  const int dmax = cx.cfg.dmax < 0 ? static_cast<int>(cx.cfg.d) + 1 : cx.cfg.dmax;
  Json out;
  auto desc = detect_description(cx.decs, m_candidates(cx), dmax, cx.cfg.holdout);
  if (!desc) {
    out["found"] = false;
    cx.report["checks"]["description"] = out;
    cx.error("description", "no polynomial description found for the candidate periods within n <= " +
                                std::to_string(cx.decs.size() ? cx.decs.size() - 1 : 0));
    return;
  }
  out["found"] = true;
  out["m"] = desc->m;
  out["t_min"] = desc->t_min;
  out["degree"] = desc->degree();
  out["U"] = desc->U;
  bool all_proj = true;
  for (ClassId id : desc->U) all_proj = all_proj && cx.reg.entry(id).projective;
  out["all_projective"] = all_proj;
  Json res = Json::array();
  for (std::size_t a = 0; a < desc->m; ++a) {
    Json terms = Json::array();
    for (auto& [key, p] : desc->P)
      if (key.first == a) terms.push_back({{"id", key.second}, {"coeffs", poly_json(p)}});
    res.push_back({{"a", a}, {"terms", terms}});
  }
  out["residues"] = res;
  out["degree_matches_d"] = desc->degree() == static_cast<int>(cx.cfg.d);
  cx.report["checks"]["description"] = out;
}

const RamificationReport& ramification_of(Context& cx) {
  if (!cx.ram) cx.ram = ramification(cx.g);
  return *cx.ram;
}

void check_ramification(Context& cx) {
  const auto& r = ramification_of(cx);
  Json el = Json::array();
  for (auto& e : r.elements) {
    Json fx = Json::array();
    for (auto& c : e.fixed) fx.push_back({c.exponent, c.dim});
    el.push_back({{"index", e.index}, {"order", e.order}, {"fixed", fx}});
  }
  cx.report["checks"]["ramification"] = {{"d", r.d},           {"N", r.N},
                                         {"dimB", r.dimB},     {"dimBp", r.dimBp},
                                         {"c", r.c},           {"cp", r.cp},
                                         {"generically_free", r.generically_free},
                                         {"faithful_on_P", r.faithful_on_P},
                                         {"elements", el}};
}

Json bounded_json(const BoundedGrowthReport& b) {
  Json j{{"c", b.c}, {"exact", b.exact}, {"m", b.m}, {"bound", b.bound}, {"heuristic", b.heuristic}};
  j["degree"] = b.degree ? Json(*b.degree) : Json("empty");
  if (b.heuristic) {
    j["sup_ratio"] = b.sup_ratio;
    j["ratio_monotone"] = b.ratio_monotone;
  }
  return j;
}

void check_growth(Context& cx) {
  Json out;
  std::vector<std::int64_t> dims, nonproj, nonfree_dims;
  for (auto& v : cx.decs) {
    dims.push_back(static_cast<std::int64_t>(dv_dim(v, cx.reg)));
    nonproj.push_back(static_cast<std::int64_t>(dv_dim(split_projective(v, cx.reg).nonprojective, cx.reg)));
    nonfree_dims.push_back(static_cast<std::int64_t>(dv_dim(nonfree(v, cx.reg), cx.reg)));
  }
  bool ok = true;
  try {
    auto g = growth_degree(dims, 1);
    Json q = Json::array();
    for (auto& p : g.Q) q.push_back(poly_json(p));
    out["sym"] = {{"ok", g.ok}, {"degree", g.degree ? Json(*g.degree) : Json("empty")}, {"Q", q},
                  {"thresholds", g.thresholds}};
    ok = ok && g.ok && g.degree == static_cast<int>(cx.cfg.d);
  } catch (const std::exception& e) {
    cx.error("growth", e.what());
    ok = false;
  }
  const auto& r = ramification_of(cx);
  auto np = bounded_growth_check(nonproj, std::max(r.cp, 0), m_candidates(cx));
  auto nf = bounded_growth_check(nonfree_dims, std::max(r.c, 0), m_candidates(cx));
  out["nonprojective"] = bounded_json(np);
  out["nonfree"] = bounded_json(nf);
  out["nonprojective_dims"] = nonproj;
  out["nonfree_dims"] = nonfree_dims;
  ok = ok && np.exact && nf.exact;
  out["ok"] = ok;
  cx.report["checks"]["growth"] = out;
  if (!ok) cx.partial = true;
}

const std::vector<BrauerChar>& chars_of(Context& cx, std::size_t want) {
  if (cx.chars.size() <= want) {
    std::size_t hi = want;
    while (MonomialBasis::count(cx.g->rep.dim, hi) > cx.cfg.max_dim) --hi;
    cx.chars = sym_characters(cx.g, hi);
  }
  return cx.chars;
}

void check_delta(Context& cx) {
  const std::size_t m = cx.g->order * cx.g->order, d = cx.cfg.d;
  // enough terms for order d+1 differences plus confirmations on every residue
  const auto& ch = chars_of(cx, std::max(cx.cfg.n_max, m * (d + 6) + m - 1));
  const std::size_t n_hi = ch.size() - 1;
  Json out, per = Json::array();
  bool ok = true, lower_vanishes = true;
  for (std::size_t j = 0; j < m && j <= n_hi; ++j) {
    const std::size_t steps = (n_hi - j) / m;
    auto hi = check_delta_vanishing_seq(ch, j, m, d + 1, steps);
    auto lo = check_delta_vanishing_seq(ch, j, m, d, steps);
    per.push_back({{"j", j},
                   {"order_d_plus_1", hi.vanishes_from ? Json(*hi.vanishes_from) : Json(nullptr)},
                   {"order_d", lo.vanishes_from ? Json(*lo.vanishes_from) : Json(nullptr)},
                   {"window", hi.window}});
    ok = ok && hi.vanishes_from.has_value();
    lower_vanishes = lower_vanishes && lo.vanishes_from.has_value();
  }
  // least divisor of m at which order d+1 differences vanish on every residue (observed only)
  std::optional<std::size_t> min_stride;
  for (std::size_t s = 1; s <= m && !min_stride; ++s) {
    if (m % s) continue;
    bool all = true;
    for (std::size_t j = 0; j < s && all; ++j)
      all = check_delta_vanishing_seq(ch, j, s, d + 1, (n_hi - j) / s).vanishes_from.has_value();
    if (all) min_stride = s;
  }
  out["m"] = m;
  out["min_stride_observed"] = min_stride ? Json(*min_stride) : Json(nullptr);
  out["per_j"] = per;
  out["ok"] = ok;
  out["order_d_vanishes"] = lower_vanishes;
  cx.report["checks"]["delta_vanishing"] = out;
  if (!ok) cx.error("delta_vanishing", "Delta^(d+1) did not vanish within the window for some residue");
}

void check_char_growth(Context& cx) {
  const GroupData& G = *cx.g;
  const auto& ch = chars_of(cx, std::max(cx.cfg.n_max, G.order * (cx.cfg.d + 6) + G.order - 1));
  Json per = Json::array();
  bool ok = true;
  for (std::size_t e : G.p_regular_class_reps) {
    if (e == 0) continue;
    int dfix = -1;
    for (auto& c : fixed_dims(cx.g, e)) dfix = std::max(dfix, c.dim);
    for (std::size_t a = 0; a < G.order && a < ch.size(); ++a) {
      const std::size_t r_max = (ch.size() - 1 - a) / G.order;
      try {
        auto r = char_growth_check_seq(G, ch, e, a, std::max(dfix, 0), r_max);
        per.push_back({{"element", e}, {"a", a}, {"d_fix", dfix}, {"order", r.order},
                       {"vanishes_from", r.vanishes_from ? Json(*r.vanishes_from) : Json(nullptr)}, {"ok", r.ok}});
        ok = ok && r.ok;
      } catch (const std::exception& ex) {
        per.push_back({{"element", e}, {"a", a}, {"error", ex.what()}});
        ok = false;
      }
    }
  }
  cx.report["checks"]["char_growth"] = {{"per_element", per}, {"ok", ok}};
  if (!ok) cx.error("char_growth", "character growth check failed for some element");
}

void check_koszul(Context& cx) {
  const auto t0 = Clock::now();
  SymContext ctx(cx.g, cx.reg, derive_seed(cx.cfg.seed, 0x4b), cx.cfg.max_dim);
  for (std::size_t n = 0; n < cx.decs.size(); ++n) ctx.set_decomposition(n, cx.decs[n]);
  Json out;
  auto fc = choose_forms(ctx, derive_seed(cx.cfg.seed, 0x4c));
  out["m"] = fc.m;
  out["form_attempts"] = fc.attempts;
  const std::uint64_t m2 = cx.g->order / cx.g->p_part;
  out["form_exponent"] = m2 * m2;
  const std::size_t t_limit = cx.cfg.koszul_t_limit ? cx.cfg.koszul_t_limit : cx.cfg.d + 4;
  auto mu0 = find_mu0(ctx, fc.forms, t_limit);
  out["mu0_empirical"] = mu0 ? Json(*mu0) : Json(nullptr);
  if (!mu0) {
    cx.report["checks"]["koszul"] = out;
    cx.error("koszul", "no t <= " + std::to_string(t_limit) + " with exact complexes for all j");
    return;
  }
  bool ok = true;
  Json runs = Json::array();
  for (std::size_t t = *mu0; t <= *mu0 + cx.cfg.koszul_t_span; ++t)
    for (std::size_t j = 0; j < fc.m; ++j) {
      auto K = build_complex(ctx, fc.forms, t, j);
      auto ex = check_exact(K);
      auto sp = check_split_stagewise(ctx, K);
      auto eu = euler_identity(ctx, fc.m, j, t, ex.coker_dim);
      Json stages = Json::array();
      for (auto& s : sp.stages) stages.push_back({{"r", s.r}, {"split", s.split}});
      runs.push_back({{"t", t},
                      {"j", j},
                      {"dims", K.dims},
                      {"exact", ex.exact},
                      {"coker_dim", ex.coker_dim},
                      {"stages", stages},
                      {"all_split", sp.all_split},
                      {"Q", dv_json(sp.Q)},
                      {"Q_free", sp.Q_free},
                      {"euler_free_multiple", eu.q ? Json(*eu.q) : Json(nullptr)},
                      {"euler_consistent", eu.consistent}});
      ok = ok && ex.ok() && sp.all_split && sp.Q_free && eu.consistent;
    }
  out["runs"] = runs;
  out["ok"] = ok;
  // splitting is not known for d >= 4: report the outcome without failing the job
  const bool experimental = cx.cfg.d >= 4;
  out["experimental"] = experimental;
  cx.report["checks"]["koszul"] = out;
  cx.sidecar["timing"]["koszul"] = seconds_since(t0);
  if (!ok && !experimental) cx.error("koszul", "some complex failed exactness, splitting or the Euler identity");
}

void check_progression(Context& cx) {
  if (cx.cfg.d != 2) {
    cx.report["checks"]["surface_progression"] = {{"skipped", "requires d = 2"}};
    return;
  }
  SymContext ctx(cx.g, cx.reg, derive_seed(cx.cfg.seed, 0x5b), cx.cfg.max_dim);
  for (std::size_t n = 0; n < cx.decs.size(); ++n) ctx.set_decomposition(n, cx.decs[n]);
  const std::size_t m = cx.g->order;
  Json per = Json::array();
  bool ok = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (cx.decs.size() <= j + m * 5) {
      ok = false;
      per.push_back({{"j", j}, {"error", "n_max too small for 5 steps"}});
      continue;
    }
    const std::size_t t1 = (cx.decs.size() - 1 - j) / m;
    auto r = surface_progression_check(ctx, m, j, 1, t1);
    per.push_back({{"j", j},
                   {"threshold", r.threshold ? Json(*r.threshold) : Json(nullptr)},
                   {"constant", dv_json(r.constant)},
                   {"ok", r.ok}});
    ok = ok && r.ok;
  }
  cx.report["checks"]["surface_progression"] = {{"m", m}, {"per_j", per}, {"ok", ok}};
  if (!ok) cx.error("surface_progression", "differences of nonfree parts not eventually constant in the window");
}

void write_classes(Context& cx) {
  std::set<ClassId> used;
  for (auto& v : cx.decs)
    for (auto [id, k] : v) used.insert(id);
  const DecompVector reg_vec = cx.reg.regular_vector().value_or(DecompVector{});
  for (auto [id, k] : reg_vec) used.insert(id);
  if (cx.report.contains("checks") && cx.report["checks"].contains("koszul") &&
      cx.report["checks"]["koszul"].contains("runs"))
    for (auto& r : cx.report["checks"]["koszul"]["runs"])
      for (auto [id, k] : dv_from_json(r["Q"])) used.insert(id);
  Json cls = Json::array();
  for (ClassId id : used) {
    const auto& e = cx.reg.entry(id);
    cls.push_back({{"id", id}, {"dim", e.rep.dim()}, {"projective", e.projective}});
  }
  cx.report["classes"] = cls;
}

void run_check(Context& cx, const std::string& name, const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  try {
    fn();
  } catch (const std::exception& e) {
    cx.error(name, e.what());
  }
  cx.sidecar["timing"][name] = seconds_since(t0);
}

Json group_json(const GroupData& g) {
  return {{"order", g.order}, {"p", g.p()}, {"p_part", g.p_part}, {"dim", g.rep.dim},
          {"element_hash", sha256_hex(g.element_hash_bytes())}};
}

Context& start(Context& cx) {
  cx.report["artifact_version"] = kArtifactVersion;
  cx.report["config"] = config_echo(cx.cfg);
  cx.report["group"] = group_json(*cx.g);
  cx.report["errors"] = Json::array();
  cx.report["checks"] = Json::object();
  if (!cx.cfg.cache_dir.empty()) {
    cx.cache.root = cx.cfg.cache_dir;
    cx.cache.group_key = Cache::key_for(cx.cfg, std::nullopt);
  }
  return cx;
}

RunReport finish(Context& cx, Clock::time_point t0) {
  cx.sidecar["cache"] = {{"enabled", cx.cache.enabled()}, {"hits", cx.cache.hits}, {"misses", cx.cache.misses},
                         {"writes", cx.cache.writes}};
  cx.sidecar["timing"]["total"] = seconds_since(t0);
  cx.sidecar["jobs"] = cx.cfg.jobs;
  cx.report["status"] = cx.partial ? "partial" : "ok";
  return {cx.report, cx.sidecar, cx.partial};
}

}  // namespace

RunReport run(const JobConfig& cfg) {
  const auto t0 = Clock::now();
  Context cx(cfg, config_group(cfg));
  start(cx);
  const auto& ch = cfg.checks;
  const bool need_decomp = ch.count("decompose") || ch.count("description") || ch.count("growth") ||
                           ch.count("surface_progression") || ch.count("koszul");
  if (need_decomp) run_check(cx, "decompose", [&] { stage_decompose(cx, cfg.n_max); });
  if (ch.count("ramification")) run_check(cx, "ramification", [&] { check_ramification(cx); });
  if (ch.count("description")) run_check(cx, "description", [&] { check_description(cx); });
  if (ch.count("growth")) run_check(cx, "growth", [&] { check_growth(cx); });
  if (ch.count("delta_vanishing")) run_check(cx, "delta_vanishing", [&] { check_delta(cx); });
  if (ch.count("char_growth")) run_check(cx, "char_growth", [&] { check_char_growth(cx); });
  if (ch.count("koszul")) run_check(cx, "koszul", [&] { check_koszul(cx); });
  if (ch.count("surface_progression")) run_check(cx, "surface_progression", [&] { check_progression(cx); });
  if (!ch.count("decompose")) cx.report.erase("decompositions");
  if (need_decomp) write_classes(cx);
  if (!ch.empty() && !cx.chars.empty()) {
    Json c = Json::array();
    for (std::size_t n = 0; n < cx.chars.size(); ++n) c.push_back({{"n", n}, {"values", cx.chars[n].reduced()}});
    cx.report["characters"] = {{"N", cx.chars[0].N}, {"classes", cx.chars[0].classes}, {"by_degree", c}};
  }
  return finish(cx, t0);
}

RunReport run_single(const JobConfig& cfg, std::size_t n) {
  const auto t0 = Clock::now();
  Context cx(cfg, config_group(cfg));
  start(cx);
  run_check(cx, "decompose", [&] {
    stage_decompose(cx, n);
    if (cx.decs.size() > n) {
      cx.report["decompositions"] = Json::array({{{"n", n}, {"vector", dv_json(cx.decs[n])}}});
      cx.decs = {cx.decs[n]};
    }
  });
  write_classes(cx);
  return finish(cx, t0);
}

RunReport run_explore(const JobConfig& cfg) {
  const auto t0 = Clock::now();
  Context cx(cfg, config_group(cfg));
  start(cx);
  run_check(cx, "decompose", [&] { stage_decompose(cx, cfg.n_max); });
  std::vector<std::size_t> sizes;
  std::set<ClassId> seen;
  for (auto& v : cx.decs) {
    for (auto [id, k] : v) seen.insert(id);
    sizes.push_back(seen.size());
  }
  cx.report["explore"] = {{"label", "exploratory: observed number of distinct indecomposables among Sym^0..Sym^n; "
                                    "not evidence of finiteness"},
                          {"distinct_classes_by_n", sizes}};
  write_classes(cx);
  return finish(cx, t0);
}

std::string decompositions_csv(const Json& report) {
  std::ostringstream os;
  os << "n,id,mult\n";
  if (report.contains("decompositions"))
    for (auto& row : report["decompositions"])
      for (auto& e : row["vector"]) os << row["n"].get<std::size_t>() << ',' << e[0] << ',' << e[1] << '\n';
  return os.str();
}

namespace {

std::string characters_csv(const Json& report) {
  std::ostringstream os;
  os << "n,class,coefficients\n";
  if (report.contains("characters")) {
    const auto& c = report["characters"];
    for (auto& row : c["by_degree"])
      for (std::size_t i = 0; i < row["values"].size(); ++i) {
        os << row["n"] << ',' << c["classes"][i] << ',';
        std::string sep;
        for (auto& x : row["values"][i]) {
          os << sep << x;
          sep = " ";
        }
        os << '\n';
      }
  }
  return os.str();
}

std::string growth_csv(const Json& report) {
  std::ostringstream os;
  os << "series,residue,coefficients\n";
  if (report.contains("checks") && report["checks"].contains("growth") && report["checks"]["growth"].contains("sym")) {
    const auto& q = report["checks"]["growth"]["sym"]["Q"];
    for (std::size_t a = 0; a < q.size(); ++a) {
      os << "sym," << a << ',';
      std::string sep;
      for (auto& x : q[a]) {
        os << sep << x.get<std::string>();
        sep = " ";
      }
      os << '\n';
    }
  }
  return os.str();
}

void write_file(const fs::path& p, const std::string& s) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << s;
}

}  // namespace

void emit(const RunReport& r, const std::string& format, const std::string& path) {
  fs::path p(path);
  if (format == "json") {
    write_file(p, canonical_json(r.report));
  } else if (format == "csv") {
    write_file(p, decompositions_csv(r.report));
    fs::path stem = p.parent_path() / p.stem();
    write_file(stem.string() + "_characters.csv", characters_csv(r.report));
    write_file(stem.string() + "_growth.csv", growth_csv(r.report));
  } else {
    throw std::invalid_argument("emit: unknown format '" + format + "'");
  }
  write_file(p.string() + ".meta.json", canonical_json(r.sidecar));
}

}  // namespace symrep
