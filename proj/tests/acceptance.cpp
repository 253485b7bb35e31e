// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "symrep/characters.hpp"
#include "symrep/decomp.hpp"
#include "symrep/geometry.hpp"
#include "symrep/koszul.hpp"
#include "symrep/pipeline.hpp"
#include "symrep/polydesc.hpp"

using namespace symrep;
using namespace symrep::fixtures;

namespace {

// time budgets in seconds
constexpr double kBudget1 = 10, kBudget3 = 30, kBudget4 = 120, kBudget5 = 60, kBudget8 = 600;
// golden values, recorded on the first verified run
constexpr std::int64_t kGoldenS3NonfreeBound = 5;
constexpr std::size_t kGoldenKleinRegistrySize = 4;
constexpr std::size_t kGoldenSurfaceThreshold = 1;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %-34s %8.2fs  %s\n", o.ok ? "PASS" : "FAIL", id, name, s, o.detail.c_str());
  std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Jordan partition of a unipotent matrix from ranks of (A - I)^k.
std::multiset<std::size_t> jordan_oracle(const Mat& a) {
  const std::size_t n = a.rows();
  Mat N = a - Mat::identity(a.field(), n), P = Mat::identity(a.field(), n);
  std::vector<std::size_t> rk{n};
  while (rk.back() > 0) {
    P = P * N;
    rk.push_back(rank(P));
  }
  rk.push_back(0);
  std::multiset<std::size_t> part;
  for (std::size_t b = 1; b + 1 < rk.size(); ++b) {
    const std::size_t cnt = rk[b - 1] - 2 * rk[b] + rk[b + 1];
    for (std::size_t i = 0; i < cnt; ++i) part.insert(b);
  }
  return part;
}

std::multiset<std::size_t> dims_multiset(const DecompVector& v, const Registry& reg) {
  std::multiset<std::size_t> s;
  for (auto [id, k] : v)
    for (std::int64_t i = 0; i < k; ++i) s.insert(reg.entry(id).rep.dim());
  return s;
}

std::optional<ClassId> class_of_dim(const Registry& reg, std::size_t dim) {
  std::optional<ClassId> out;
  for (ClassId id = 0; id < reg.size(); ++id)
    if (reg.entry(id).rep.dim() == dim) {
      if (out) return std::nullopt;
      out = id;
    }
  return out;
}

JobConfig cyclic_config(std::uint32_t p, std::uint64_t seed) {
  std::ostringstream os;
  os << R"({"field": {"p": )" << p << R"(}, "generators": ["2 2\n1 1\n0 1\n"], "n_max": 60, "seed": )" << seed
     << R"(, "checks": ["decompose"]})";
  return parse_config(os.str());
}

}  // namespace

int main() {
  criterion(1, "cyclic oracle equivalence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t cases = 0, bad = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto g = cyclic_unipotent(p);
      Registry reg(g);
      for (std::size_t n = 0; n <= 60; ++n) {
        auto M = sym_power(g, n);
        auto v = decompose(M, reg, n);
        ++cases;
        if (dims_multiset(v, reg) != jordan_oracle(M.act(g->gen_index[0]))) ++bad;
      }
    }
    const double s = elapsed(t0);
    return Outcome{bad == 0 && cases == 183 && s < kBudget1,
                   std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches, budget " +
                       std::to_string(static_cast<int>(kBudget1)) + "s"};
  });

  criterion(2, "polynomial description C_p on P1", [] {
    std::string detail;
    bool ok = true;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto g = cyclic_unipotent(p);
      Registry reg(g);
      std::vector<DecompVector> seq;
      for (std::size_t n = 0; n <= 60; ++n) seq.push_back(decompose(sym_power(g, n), reg, n));
      auto d = detect_description(seq, default_m_candidates(p), 2, 3);
      bool good = d && d->m == p && d->degree() == 1;
      if (good) {
        for (std::size_t a = 0; a < p; ++a) {
          auto jp = class_of_dim(reg, p), ja = class_of_dim(reg, a + 1);
          if (!jp || !ja) {
            good = false;
            break;
          }
          auto it = d->P.find({a, *jp});
          good = good && it != d->P.end() && it->second.degree() == 1;
          if (a + 1 < p) {
            auto it2 = d->P.find({a, *ja});
            good = good && it2 != d->P.end() && it2->second == Polynomial{{Rational(1)}};
          }
        }
        for (std::size_t n = d->t_min * d->m; n <= 60; ++n) good = good && d->evaluate(n) == seq[n];
      }
      ok = ok && good;
      detail += "p=" + std::to_string(p) + (d ? " m=" + std::to_string(d->m) + " deg=" + std::to_string(d->degree()) : " none") + "; ";
    }
    return Outcome{ok, detail};
  });

  criterion(3, "projective part identity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(2024);
    std::size_t count = 0, bad = 0;
    std::vector<GroupPtr> groups{c2xc2_f2(), gl2_f2(), cyclic_unipotent(3)};
    for (auto& g : groups) {
      Registry reg(g);
      for (int t = 0; t < 34; ++t) {
        auto M = random_module(g, 24, rng);
        auto v = decompose(M, reg, static_cast<std::uint64_t>(t));
        auto s = split_projective(v, reg);
        ++count;
        if (projective_part_dim(M) != dv_dim(s.projective, reg)) ++bad;
      }
    }
    const double s = elapsed(t0);
    return Outcome{bad == 0 && count >= 100 && s < kBudget3,
                   std::to_string(count) + " modules, " + std::to_string(bad) + " mismatches"};
  });

  criterion(4, "delta vanishing at stride #G^2", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    std::vector<std::pair<const char*, GroupPtr>> fx{
        {"C2/P1", cyclic_unipotent(2)}, {"S3/P1", gl2_f2()}, {"C2/P2", c2_p2_f4()}};
    for (auto& [name, g] : fx) {
      const std::size_t m = g->order * g->order, d = g->rep.dim - 1;
      const std::size_t steps = d + 6;
      auto chars = sym_characters(g, m * steps + m - 1);
      std::size_t worst = 0;
      bool hi_all = true, lo_none = true;
      for (std::size_t j = 0; j < m; ++j) {
        auto hi = check_delta_vanishing_seq(chars, j, m, d + 1, steps);
        auto lo = check_delta_vanishing_seq(chars, j, m, d, steps);
        hi_all = hi_all && hi.vanishes_from.has_value();
        if (hi.vanishes_from) worst = std::max(worst, *hi.vanishes_from);
        lo_none = lo_none && !lo.vanishes_from.has_value();
      }
      ok = ok && hi_all && lo_none;
      detail += std::string(name) + (hi_all ? " threshold " + std::to_string(worst) : " no threshold") +
                (lo_none ? "" : " (order d vanished)") + "; ";
    }
    ok = ok && elapsed(t0) < kBudget4;
    return Outcome{ok, detail};
  });

  criterion(5, "growth bounds", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto g = cyclic_unipotent(p);
      auto ram = ramification(g);
      Registry reg(g);
      register_regular(reg, 1);
      std::vector<std::int64_t> np;
      for (std::size_t n = 0; n <= 200; ++n) {
        auto v = decompose(sym_power(g, n), reg, n);
        np.push_back(static_cast<std::int64_t>(dv_dim(split_projective(v, reg).nonprojective, reg)));
      }
      auto b = bounded_growth_check(np, 0, default_m_candidates(p));
      const std::int64_t mx = *std::max_element(np.begin(), np.end());
      ok = ok && ram.cp == 0 && b.exact && mx == static_cast<std::int64_t>(p) - 1;
      detail += "C" + std::to_string(p) + " cp=" + std::to_string(ram.cp) + " max=" + std::to_string(mx) + "; ";
    }
    auto s3 = gl2_f2();
    auto ram = ramification(s3);
    Registry reg(s3);
    register_regular(reg, 1);
    std::vector<std::int64_t> nf;
    for (std::size_t n = 0; n <= 200; ++n)
      nf.push_back(static_cast<std::int64_t>(dv_dim(nonfree(decompose(sym_power(s3, n), reg, n), reg), reg)));
    auto b = bounded_growth_check(nf, 0, default_m_candidates(6));
    const std::int64_t mx = *std::max_element(nf.begin(), nf.end());
    ok = ok && ram.c == 0 && b.exact && mx == kGoldenS3NonfreeBound;
    detail += "S3 c=" + std::to_string(ram.c) + " nonfree bound=" + std::to_string(mx);
    ok = ok && elapsed(t0) < kBudget5;
    return Outcome{ok, detail};
  });

  criterion(6, "semisimple C3 over GF(2)", [] {
    auto g = cyclic3_f2();
    Registry reg(g);
    std::vector<DecompVector> seq;
    bool none_nonproj = true;
    for (std::size_t n = 0; n <= 100; ++n) {
      seq.push_back(decompose(sym_power(g, n), reg, n));
      none_nonproj = none_nonproj && split_projective(seq.back(), reg).nonprojective.empty();
    }
    auto d = detect_description(seq, default_m_candidates(3), 2);
    bool all_proj = d.has_value();
    if (d)
      for (ClassId id : d->U) all_proj = all_proj && reg.entry(id).projective;
    return Outcome{none_nonproj && all_proj,
                   std::string("P' empty for n<=100: ") + (none_nonproj ? "yes" : "no") +
                       ", description " + (d ? "m=" + std::to_string(d->m) : "none") +
                       (all_proj ? " all projective" : "")};
  });

  criterion(7, "Klein four family", [] {
    auto g = klein_four();
    bool distinct = true, distinct_ext = true;
    for (Elem a = 1; a < 4; ++a)
      for (Elem b = a + 1; b < 4; ++b) {
        distinct = distinct && !is_iso(rho(g, a), rho(g, b));
        distinct_ext = distinct_ext && !is_iso(extend_scalars(rho(g, a), 2), extend_scalars(rho(g, b), 2));
      }
    Registry reg(g);
    std::set<ClassId> seen;
    std::vector<std::size_t> sizes;
    for (std::size_t n = 0; n <= 40; ++n) {
      for (auto [id, k] : decompose(sym_power(g, n), reg, n)) seen.insert(id);
      sizes.push_back(seen.size());
    }
    // stable over the last half of the window
    bool stable = std::all_of(sizes.begin() + 20, sizes.end(), [&](std::size_t s) { return s == sizes.back(); });
    return Outcome{distinct && distinct_ext && stable && sizes.back() == kGoldenKleinRegistrySize,
                   std::string("pairwise distinct: ") + (distinct ? "yes" : "no") + ", over GF(16): " +
                       (distinct_ext ? "yes" : "no") + ", classes by n=40: " + std::to_string(sizes.back())};
  });

  criterion(8, "Koszul splitting and Euler class", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    std::vector<std::tuple<const char*, GroupPtr, std::int64_t>> fx{{"C2/P2", c2_p2_f4(), 2},
                                                                     {"C3/P3", c3_p3_f9(), 9}};
    for (auto& [name, g, q_expected] : fx) {
      Registry reg(g);
      SymContext ctx(g, reg, 11);
      auto fc = choose_forms(ctx, 11);
      const std::size_t d = g->rep.dim - 1;
      auto mu0 = find_mu0(ctx, fc.forms, d + 4);
      if (!mu0) {
        ok = false;
        detail += std::string(name) + " no mu0; ";
        continue;
      }
      std::uint64_t md = 1;
      for (std::size_t i = 0; i < d; ++i) md *= fc.m;
      std::size_t runs = 0;
      bool good = true;
      for (std::size_t t = *mu0; t <= *mu0 + 4; ++t)
        for (std::size_t j = 0; j < fc.m; ++j) {
          auto K = build_complex(ctx, fc.forms, t, j);
          auto ex = check_exact(K);
          auto sp = check_split_stagewise(ctx, K);
          auto eu = euler_identity(ctx, fc.m, j, t, ex.coker_dim);
          good = good && ex.ok() && sp.all_split && sp.Q_free && eu.q == q_expected &&
                 static_cast<std::uint64_t>(*eu.q) * g->order == md;
          ++runs;
        }
      ok = ok && good;
      detail += std::string(name) + " mu0=" + std::to_string(*mu0) + " runs=" + std::to_string(runs) +
                (good ? " q=" + std::to_string(q_expected) : " FAILED") + "; ";
    }
    ok = ok && elapsed(t0) < kBudget8;
    return Outcome{ok, detail};
  });

  criterion(9, "surface progression C2 on P2", [] {
    auto g = c2_p2_f4();
    Registry reg(g);
    SymContext ctx(g, reg, 13);
    auto pr = surface_progression_check(ctx, 2, 0, 1, 12);
    // the constant difference is one copy of the trivial module
    bool trivial_const = pr.constant.size() == 1 && pr.constant.begin()->second == 1 &&
                         is_iso(reg.entry(pr.constant.begin()->first).rep, trivial_module(g));
    return Outcome{pr.ok && pr.threshold == kGoldenSurfaceThreshold && trivial_const,
                   "threshold t=" + (pr.threshold ? std::to_string(*pr.threshold) : std::string("none")) +
                       ", constant " + dv_to_string(pr.constant) + (trivial_const ? " (trivial module)" : "")};
  });

  criterion(10, "determinism and cache", [] {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "symrep_acceptance_cache";
    fs::remove_all(dir);
    bool ok = true;
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto cfg = cyclic_config(p, 77);
      const std::string a = canonical_json(run(cfg).report);
      const std::string b = canonical_json(run(cfg).report);
      cfg.cache_dir = (dir / std::to_string(p)).string();
      const std::string cold = canonical_json(run(cfg).report);
      auto warm_run = run(cfg);
      const std::string warm = canonical_json(warm_run.report);
      ok = ok && a == b && a == cold && a == warm && warm_run.sidecar["cache"]["hits"] == 61;
    }
    fs::remove_all(dir);
    return Outcome{ok, "repeat, cold cache and warm cache reports byte-identical"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
