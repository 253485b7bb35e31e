#include "symrep/koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace symrep {

Form form_mul(const Form& a, const Form& b, const Field& F, std::size_t vars) {
  MonomialBasis ba(vars, a.degree), bb(vars, b.degree), bc(vars, a.degree + b.degree);
  Form c{a.degree + b.degree, Vec(bc.size(), 0)};
  std::vector<std::uint16_t> e(vars);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (!a.coeffs[i]) continue;
    for (std::size_t k = 0; k < bb.size(); ++k) {
      if (!b.coeffs[k]) continue;
      for (std::size_t v = 0; v < vars; ++v) e[v] = ba.exponents(i)[v] + bb.exponents(k)[v];
      Elem& x = c.coeffs[bc.index_of(e.data())];
      x = F.add(x, F.mul(a.coeffs[i], b.coeffs[k]));
    }
  }
  return c;
}

Form act_on_form(const Mat& g, const Form& f) { return {f.degree, sym_power_matrix(g, f.degree) * f.coeffs}; }

bool is_invariant(const GroupData& g, const Form& f) {
  for (const auto& a : g.rep.gens)
    if (act_on_form(a, f).coeffs != f.coeffs) return false;
  return true;
}

Form norm_form(const GroupData& g, const Vec& linear) {
  const std::size_t vars = g.rep.dim;
  const Field& F = *g.field();
  Form acc{0, Vec{1}};
  for (const auto& e : g.elements) acc = form_mul(acc, Form{1, e * linear}, F, vars);
  return acc;
}

Mat SparseCols::dense(const FieldPtr& f) const {
  Mat m(f, rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (auto [r, v] : col[c]) m(r, c) = v;
  return m;
}

SparseCols multiplication_map(const Form& N, std::size_t vars, std::size_t src_degree, const Field& F) {
  MonomialBasis src(vars, src_degree), bn(vars, N.degree), dst(vars, src_degree + N.degree);
  SparseCols s;
  s.rows = dst.size();
  s.cols = src.size();
  s.col.resize(s.cols);
  std::vector<std::uint16_t> e(vars);
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (std::size_t k = 0; k < bn.size(); ++k) {
      if (!N.coeffs[k]) continue;
      for (std::size_t v = 0; v < vars; ++v) e[v] = src.exponents(c)[v] + bn.exponents(k)[v];
      s.col[c].emplace_back(static_cast<std::uint32_t>(dst.index_of(e.data())), N.coeffs[k]);
    }
    std::sort(s.col[c].begin(), s.col[c].end());
  }
  (void)F;
  return s;
}

SymContext::SymContext(GroupPtr g, Registry& reg, std::uint64_t seed, std::size_t max_dim)
    : g_(std::move(g)), reg_(reg), seed_(seed), max_dim_(max_dim) {
  register_regular(reg_, seed_);
}

const ModuleRep& SymContext::module(std::size_t n) {
  auto it = mods_.find(n);
  if (it != mods_.end()) return it->second;
  return mods_.emplace(n, sym_power(g_, n, max_dim_)).first->second;
}

const DecompVector& SymContext::decomposition(std::size_t n) {
  auto it = decs_.find(n);
  if (it != decs_.end()) return it->second;
  DecompVector v = decompose(module(n), reg_, derive_seed(seed_, n));
  return decs_.emplace(n, std::move(v)).first->second;
}

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t d, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < d; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Block-diagonal action of a Sym matrix on k copies.
Vec block_apply(const Mat& a, const Vec& x, std::size_t copies) {
  const std::size_t s = a.rows();
  Vec out(x.size(), 0);
  const Field& F = a.F();
  for (std::size_t b = 0; b < copies; ++b)
    for (std::size_t i = 0; i < s; ++i) {
      Elem acc = 0;
      const Elem* row = a.row(i);
      for (std::size_t k = 0; k < s; ++k)
        if (row[k] && x[b * s + k]) acc = F.add(acc, F.mul(row[k], x[b * s + k]));
      out[b * s + i] = acc;
    }
  return out;
}

// tau * blockdiag(D, ..., D)
Mat sparse_times_blockdiag(const SparseCols& tau, const Mat& D, const FieldPtr& f) {
  const std::size_t s = D.rows();
  Mat out(f, tau.rows, tau.cols);
  if (s == 0) return out;
  const Field& F = *f;
  for (std::size_t c = 0; c < tau.cols; ++c) {
    const std::size_t b = c / s, i = c % s;
    for (auto [row, v] : tau.col[c]) F.axpy(out.row(row) + b * s, v, D.row(i), s);
  }
  return out;
}

}  // namespace

std::size_t KoszulComplex::tau_rank(std::size_t r) const {
  if (r == 0 || r > d) return 0;
  if (!rank_cache[r]) rank_cache[r] = rank(tau[r]);
  return *rank_cache[r];
}

KoszulComplex build_complex(SymContext& ctx, const std::vector<Form>& forms, std::size_t t, std::size_t j) {
  const GroupData& G = *ctx.group();
  const FieldPtr& f = G.field();
  const Field& F = *f;
  const std::size_t vars = G.rep.dim, d = vars - 1;
  if (forms.size() != d) throw std::invalid_argument("build_complex: need d forms");
  const std::size_t m = forms.empty() ? 1 : forms[0].degree;
  for (const auto& N : forms)
    if (N.degree != m) throw std::invalid_argument("build_complex: forms of unequal degree");
  if (t < 1) throw std::invalid_argument("build_complex: t must be >= 1");
  if (j >= m) throw std::invalid_argument("build_complex: need 0 <= j < m");
  KoszulComplex K;
  K.d = d;
  K.m = m;
  K.j = j;
  K.t = t;
  K.forms = forms;
  K.rank_cache.assign(d + 1, std::nullopt);
  for (std::size_t r = 0; r <= d; ++r) {
    std::int64_t deg = static_cast<std::int64_t>(m) * (static_cast<std::int64_t>(t) - static_cast<std::int64_t>(r)) +
                       static_cast<std::int64_t>(j);
    if (deg < 0) {
      K.degree.push_back(std::nullopt);
      K.dims.push_back(0);
      continue;
    }
    const std::size_t n = static_cast<std::size_t>(deg);
    const std::uint64_t dim = binomial(d, r) * MonomialBasis::count(vars, n);
    if (dim > kDefaultMaxDim) throw std::length_error("build_complex: term dimension exceeds cap");
    K.degree.push_back(n);
    K.dims.push_back(static_cast<std::size_t>(dim));
  }
  K.tau_sparse.resize(d + 1);
  K.tau.resize(d + 1);
  for (std::size_t r = 1; r <= d; ++r) {
    SparseCols& T = K.tau_sparse[r];
    T.rows = K.dims[r - 1];
    T.cols = K.dims[r];
    T.col.resize(T.cols);
    if (T.cols > 0) {
      const std::size_t src = *K.degree[r];
      const std::size_t s = static_cast<std::size_t>(MonomialBasis::count(vars, src));
      const std::size_t s_lo = static_cast<std::size_t>(MonomialBasis::count(vars, *K.degree[r - 1]));
      auto hi = subsets(d, r), lo = subsets(d, r - 1);
      std::map<std::vector<std::size_t>, std::size_t> lo_pos;
      for (std::size_t i = 0; i < lo.size(); ++i) lo_pos[lo[i]] = i;
      std::vector<SparseCols> mult;
      for (const auto& N : forms) mult.push_back(multiplication_map(N, vars, src, F));
      for (std::size_t bi = 0; bi < hi.size(); ++bi) {
        const auto& I = hi[bi];
        for (std::size_t k = 0; k < I.size(); ++k) {
          auto J = I;
          J.erase(J.begin() + static_cast<std::ptrdiff_t>(k));
          const std::size_t bj = lo_pos.at(J);
          const Elem sign = (k % 2 == 0) ? 1 : F.neg(1);
          const SparseCols& M = mult[I[k]];
          for (std::size_t c = 0; c < s; ++c)
            for (auto [row, v] : M.col[c])
              T.col[bi * s + c].emplace_back(static_cast<std::uint32_t>(bj * s_lo + row), F.mul(sign, v));
        }
      }
      for (auto& c : T.col) std::sort(c.begin(), c.end());
    }
    K.tau[r] = T.dense(f);
  }
  // tau_r tau_{r+1} = 0
  for (std::size_t r = 1; r < d; ++r) {
    const SparseCols &A = K.tau_sparse[r], &B = K.tau_sparse[r + 1];
    Vec acc(A.rows, 0);
    for (std::size_t c = 0; c < B.cols; ++c) {
      std::fill(acc.begin(), acc.end(), 0);
      for (auto [i, v] : B.col[c])
        for (auto [row, w] : A.col[i]) acc[row] = F.add(acc[row], F.mul(v, w));
      for (auto x : acc)
        if (x) throw std::logic_error("build_complex: tau o tau != 0");
    }
  }
  // equivariance, exact for small terms and on random vectors otherwise
  Rng rng(derive_seed(ctx.seed(), 0xc0 + t * 131 + j));
  for (std::size_t r = 1; r <= d; ++r) {
    if (K.dims[r] == 0 || K.dims[r - 1] == 0) continue;
    const ModuleRep& hi = ctx.module(*K.degree[r]);
    const ModuleRep& lo = ctx.module(*K.degree[r - 1]);
    const std::size_t chi = static_cast<std::size_t>(binomial(d, r)), clo = static_cast<std::size_t>(binomial(d, r - 1));
    for (std::size_t g = 0; g < G.rep.gens.size(); ++g) {
      const bool full = K.dims[r] <= 300;
      const std::size_t trials = full ? K.dims[r] : 4;
      for (std::size_t tr = 0; tr < trials; ++tr) {
        Vec x(K.dims[r], 0);
        if (full) x[tr] = 1;
        else
          for (auto& e : x) e = static_cast<Elem>(uniform_below(rng, F.q()));
        Vec lhs = block_apply(lo.action()[g], K.tau[r] * x, clo);
        Vec rhs = K.tau[r] * block_apply(hi.action()[g], x, chi);
        if (lhs != rhs) throw std::logic_error("build_complex: tau is not equivariant");
      }
    }
  }
  return K;
}

ModuleRep complex_term(SymContext& ctx, const KoszulComplex& K, std::size_t r) {
  if (!K.degree.at(r)) return trivial_module(ctx.group(), 0);
  const ModuleRep& s = ctx.module(*K.degree[r]);
  std::vector<ModuleRep> parts(static_cast<std::size_t>(binomial(K.d, r)), s);
  return direct_sum(parts);
}

ModuleRep cokernel_module(SymContext& ctx, const KoszulComplex& K) {
  const ModuleRep& c0 = ctx.module(*K.degree[0]);
  if (K.d == 0 || K.dims[1] == 0) return c0;
  return quotient_module(c0, column_space(K.tau[1]));
}

ExactReport check_exact(const KoszulComplex& K) {
  ExactReport rep;
  rep.exact = true;
  for (std::size_t r = 1; r <= K.d; ++r) rep.ranks.push_back(K.tau_rank(r));
  for (std::size_t r = 1; r <= K.d; ++r) {
    bool ok = K.tau_rank(r + 1) == K.dims[r] - K.tau_rank(r);
    rep.exact_at.push_back(ok);
    rep.exact = rep.exact && ok;
  }
  rep.coker_dim = K.dims[0] - K.tau_rank(1);
  rep.expected_coker = 1;
  for (std::size_t i = 0; i < K.d; ++i) rep.expected_coker *= K.m;
  rep.coker_ok = rep.coker_dim == rep.expected_coker;
  return rep;
}

bool ks_split(const ModuleRep& C, const Subspace& sub, Registry& reg, std::uint64_t seed) {
  auto whole = decompose(C, reg, seed);
  return whole == dv_add(decompose(submodule(C, sub), reg, seed + 1), decompose(quotient_module(C, sub), reg, seed + 2));
}

namespace {

std::vector<std::size_t> partition_from_ranks(const std::vector<std::size_t>& rk) {
  // rk[k] = rank of N^k, with rk.back() == 0
  std::vector<std::size_t> part;
  for (std::size_t b = 1; b < rk.size(); ++b) {
    std::int64_t next = b + 1 < rk.size() ? static_cast<std::int64_t>(rk[b + 1]) : 0;
    std::int64_t n = static_cast<std::int64_t>(rk[b - 1]) - 2 * static_cast<std::int64_t>(rk[b]) + next;
    if (n < 0) throw std::logic_error("partition_from_ranks: inconsistent ranks");
    for (std::int64_t i = 0; i < n; ++i) part.push_back(b);
  }
  std::sort(part.rbegin(), part.rend());
  return part;
}

SplitReport split_fast(SymContext& ctx, const KoszulComplex& K, const ExactReport& ex) {
  const GroupData& G = *ctx.group();
  const FieldPtr& f = G.field();
  const Field& F = *f;
  Registry& reg = ctx.registry();
  std::size_t c = 0;
  while (G.element_orders[c] != G.order) ++c;
  std::vector<std::size_t> pw{0};
  for (std::size_t i = 1; i < G.order; ++i) pw.push_back(G.mul(c, pw.back()));
  const std::size_t L = G.order;  // (sigma - 1)^L = 0
  auto D = [&](std::size_t n, std::size_t k) {
    const ModuleRep& S = ctx.module(n);
    Mat out(f, S.dim(), S.dim());
    for (std::size_t i = 0; i <= k; ++i) {
      Elem coef = F.from_int(static_cast<std::int64_t>(binomial(k, i)) * (((k - i) % 2) ? -1 : 1));
      if (coef) F.axpy(out.data().data(), coef, S.act(pw[i % G.order]).data().data(), out.data().size());
    }
    return out;
  };
  // Jordan types of the images I_r
  std::vector<std::vector<std::size_t>> img(K.d + 2);
  for (std::size_t r = 1; r <= K.d; ++r) {
    if (K.dims[r] == 0 || K.dims[r - 1] == 0) continue;
    std::vector<std::size_t> rk{K.tau_rank(r)};
    for (std::size_t k = 1; k <= L && rk.back() > 0; ++k)
      rk.push_back(rank(sparse_times_blockdiag(K.tau_sparse[r], D(*K.degree[r], k), f)));
    if (rk.back() != 0) rk.push_back(0);
    img[r] = partition_from_ranks(rk);
  }
  ModuleRep Q = cokernel_module(ctx, K);
  auto q_part = Q.dim() ? unipotent_jordan(Q.act(c)) : std::vector<std::size_t>{};
  SplitReport rep;
  rep.fast_path = true;
  rep.all_split = true;
  for (std::size_t r = 0; r <= K.d; ++r) {
    StageVerdict sv;
    sv.r = r;
    if (K.degree[r]) sv.term = dv_scale(ctx.decomposition(*K.degree[r]), static_cast<std::int64_t>(binomial(K.d, r)));
    sv.kernel = from_jordan_type(reg, img[r + 1]);
    sv.quotient = from_jordan_type(reg, r == 0 ? q_part : img[r]);
    sv.split = sv.term == dv_add(sv.kernel, sv.quotient);
    rep.all_split = rep.all_split && sv.split;
    rep.stages.push_back(std::move(sv));
  }
  (void)ex;
  rep.Q = from_jordan_type(reg, q_part);
  return rep;
}

SplitReport split_generic(SymContext& ctx, const KoszulComplex& K) {
  Registry& reg = ctx.registry();
  SplitReport rep;
  rep.all_split = true;
  for (std::size_t r = 0; r <= K.d; ++r) {
    StageVerdict sv;
    sv.r = r;
    if (K.dims[r] > 0) {
      ModuleRep C = complex_term(ctx, K, r);
      Subspace ker;
      if (r == 0)
        ker = (K.d >= 1 && K.dims[1] > 0) ? column_space(K.tau[1]) : null_space(Mat::identity(C.field(), C.dim()));
      else
        ker = null_space(K.tau[r]);
      const std::uint64_t s = derive_seed(ctx.seed(), 0x5000 + r);
      sv.term = dv_scale(ctx.decomposition(*K.degree[r]), static_cast<std::int64_t>(binomial(K.d, r)));
      sv.kernel = decompose(submodule(C, ker), reg, s);
      sv.quotient = decompose(quotient_module(C, ker), reg, s + 1);
      if (r == 0) rep.Q = sv.quotient;
    }
    sv.split = sv.term == dv_add(sv.kernel, sv.quotient);
    rep.all_split = rep.all_split && sv.split;
    rep.stages.push_back(std::move(sv));
  }
  return rep;
}

}  // namespace

SplitReport check_split_stagewise(SymContext& ctx, const KoszulComplex& K, bool allow_fast) {
  ExactReport ex = check_exact(K);
  SplitReport rep;
  if (!ex.exact) {
    rep.error = "complex is not exact";
    return rep;
  }
  rep = (allow_fast && ctx.group()->is_cyclic_p_group()) ? split_fast(ctx, K, ex) : split_generic(ctx, K);
  Registry& reg = ctx.registry();
  rep.Q_free_rank = free_rank(rep.Q, reg);
  rep.Q_free = nonfree(rep.Q, reg).empty();
  return rep;
}

EulerReport euler_identity(SymContext& ctx, std::size_t m, std::size_t j, std::size_t t,
                           std::optional<std::size_t> coker_dim) {
  const GroupData& G = *ctx.group();
  const std::size_t d = G.rep.dim - 1;
  if (t < 1) throw std::invalid_argument("euler_identity: need t >= 1");
  EulerReport rep;
  for (std::size_t r = 0; r <= d; ++r) {
    std::int64_t deg = static_cast<std::int64_t>(m) * (static_cast<std::int64_t>(t) - static_cast<std::int64_t>(r)) +
                       static_cast<std::int64_t>(j);
    if (deg < 0) continue;
    std::int64_t coef = static_cast<std::int64_t>(binomial(d, r)) * ((r % 2) ? -1 : 1);
    rep.signed_class = dv_add(rep.signed_class, dv_scale(ctx.decomposition(static_cast<std::size_t>(deg)), coef));
  }
  const DecompVector R = *ctx.registry().regular_vector();
  const auto& [id0, k0] = *R.begin();
  auto it = rep.signed_class.find(id0);
  std::int64_t have = it == rep.signed_class.end() ? 0 : it->second;
  if (have % k0 == 0 && dv_scale(R, have / k0) == rep.signed_class) rep.q = have / k0;
  std::uint64_t md = 1;
  for (std::size_t i = 0; i < d; ++i) md *= m;
  if (rep.q) {
    const std::int64_t total = *rep.q * static_cast<std::int64_t>(G.order);
    rep.consistent = total == static_cast<std::int64_t>(md) && (!coker_dim || total == static_cast<std::int64_t>(*coker_dim));
  }
  return rep;
}

ProgressionReport surface_progression_check(SymContext& ctx, std::size_t m, std::size_t j, std::size_t t0,
                                            std::size_t t1, std::size_t confirm) {
  if (t1 <= t0) throw std::invalid_argument("surface_progression_check: empty range");
  ProgressionReport rep;
  rep.m = m;
  rep.j = j;
  rep.t0 = t0;
  Registry& reg = ctx.registry();
  for (std::size_t t = t0; t <= t1; ++t) rep.nonfree_parts.push_back(nonfree(ctx.decomposition(t * m + j), reg));
  for (std::size_t i = 0; i + 1 < rep.nonfree_parts.size(); ++i)
    rep.diffs.push_back(dv_sub(rep.nonfree_parts[i + 1], rep.nonfree_parts[i]));
  std::size_t i0 = rep.diffs.size();
  while (i0 > 0 && rep.diffs[i0 - 1] == rep.diffs.back()) --i0;
  if (rep.diffs.size() - i0 >= confirm) {
    rep.threshold = t0 + i0;
    rep.constant = rep.diffs.back();
    rep.ok = true;
  }
  return rep;
}

FormChoice choose_forms(SymContext& ctx, std::uint64_t seed) {
  const GroupData& G = *ctx.group();
  const std::size_t vars = G.rep.dim, d = vars - 1;
  const Field& F = *G.field();
  std::string last = "none";
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, 0xf0 + static_cast<std::uint64_t>(attempt)));
    FormChoice fc;
    // p-groups: m = #G; otherwise norms are raised to m2^2, m2 the p'-part of #G
    const std::uint64_t m2 = G.order / G.p_part;
    fc.m = static_cast<std::size_t>(G.order * m2 * m2);
    fc.seed = seed;
    fc.attempts = attempt + 1;
    for (std::size_t i = 0; i < d; ++i) {
      Vec r(vars);
      for (auto& x : r) x = static_cast<Elem>(uniform_below(rng, F.q()));
      Form base = norm_form(G, r), N = base;
      for (std::uint64_t k = 1; k < m2 * m2; ++k) N = form_mul(N, base, F, vars);
      fc.forms.push_back(std::move(N));
    }
    bool ok = true;
    for (auto& N : fc.forms)
      if (!is_invariant(G, N) || std::all_of(N.coeffs.begin(), N.coeffs.end(), [](Elem x) { return x == 0; })) {
        ok = false;
        last = "zero or non-invariant form";
      }
    for (std::size_t j = 0; ok && j < fc.m; ++j) {
      KoszulComplex K = build_complex(ctx, fc.forms, std::max<std::size_t>(d, 1), j);
      ExactReport ex = check_exact(K);
      if (!ex.ok()) {
        ok = false;
        last = ex.exact ? "cokernel dimension " + std::to_string(ex.coker_dim) + " != " + std::to_string(ex.expected_coker)
                        : "complex not exact";
        break;
      }
      if (j == 0) {
        DecompVector q = decompose(cokernel_module(ctx, K), ctx.registry(), derive_seed(seed, 0x9));
        if (!nonfree(q, ctx.registry()).empty()) {
          ok = false;
          last = "cokernel not free";
        }
      }
    }
    if (ok) return fc;
  }
  throw std::runtime_error("choose_forms: no valid forms found after 64 attempts (last failure: " + last + ")");
}

std::optional<std::size_t> find_mu0(SymContext& ctx, const std::vector<Form>& forms, std::size_t t_limit) {
  const std::size_t m = forms.empty() ? 1 : forms[0].degree;
  for (std::size_t t = 1; t <= t_limit; ++t) {
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) ok = check_exact(build_complex(ctx, forms, t, j)).ok();
    if (ok) return t;
  }
  return std::nullopt;
}

}  // namespace symrep
