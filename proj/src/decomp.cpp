#include "symrep/decomp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace symrep {

DecompVector dv_add(const DecompVector& a, const DecompVector& b) {
  DecompVector r = a;
  for (auto [k, v] : b) {
    r[k] += v;
    if (r[k] == 0) r.erase(k);
  }
  return r;
}

DecompVector dv_sub(const DecompVector& a, const DecompVector& b) { return dv_add(a, dv_scale(b, -1)); }

DecompVector dv_scale(const DecompVector& a, std::int64_t k) {
  DecompVector r;
  if (k == 0) return r;
  for (auto [id, v] : a) r[id] = v * k;
  return r;
}

std::string dv_to_string(const DecompVector& v) {
  std::string s = "{";
  bool first = true;
  for (auto [k, m] : v) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(k) + ":" + std::to_string(m);
  }
  return s + "}";
}

namespace {

void require_same(const ModuleRep& a, const ModuleRep& b, const char* what) {
  if (a.group() != b.group() && !same_group(*a.group(), *b.group()))
    throw std::invalid_argument(std::string(what) + ": modules over different groups");
}

}  // namespace

SpinData spin(const ModuleRep& m) {
  const std::size_t D = m.dim();
  const Field& F = *m.field();
  const GroupData& G = *m.group();
  SpinData sd;
  std::vector<Vec> ws;            // spin basis vectors
  std::vector<Vec> ech, expr;     // echelon rows and their expressions in ws
  std::vector<std::size_t> piv;

  // returns true if independent; fills coefficients of x in ws otherwise
  auto reduce = [&](Vec x, Vec& coeffs) -> bool {
    coeffs.assign(D, 0);
    for (std::size_t t = 0; t < ech.size(); ++t) {
      Elem a = x[piv[t]];
      if (!a) continue;
      F.axpy(x.data(), F.neg(a), ech[t].data(), D);
      F.axpy(coeffs.data(), a, expr[t].data(), D);
    }
    for (std::size_t i = 0; i < D; ++i) {
      if (!x[i]) continue;
      // new row: (x_orig - sum coeffs w) normalized; x_orig becomes w_new
      Elem inv = F.inv(x[i]);
      F.scale(x.data(), inv, D);
      Vec e(D, 0);
      e[ws.size()] = 1;
      F.axpy(e.data(), F.neg(1), coeffs.data(), D);
      F.scale(e.data(), inv, D);
      ech.push_back(std::move(x));
      expr.push_back(std::move(e));
      piv.push_back(i);
      return true;
    }
    return false;
  };

  Vec coeffs;
  std::size_t next = 0;
  for (std::size_t j = 0; j < D && ws.size() < D; ++j) {
    Vec e(D, 0);
    e[j] = 1;
    if (!reduce(e, coeffs)) continue;
    ws.push_back(e);
    sd.gen_of.push_back(sd.num_generators++);
    sd.elem_of.push_back(0);
    for (; next < ws.size(); ++next) {
      for (std::size_t g = 0; g < m.action().size(); ++g) {
        Vec x = m.action()[g] * ws[next];
        if (reduce(x, coeffs)) {
          ws.push_back(std::move(x));
          sd.gen_of.push_back(sd.gen_of[next]);
          sd.elem_of.push_back(G.mul(G.gen_index[g], sd.elem_of[next]));
        } else {
          sd.relations.push_back({next, g, coeffs});
        }
      }
    }
  }
  sd.basis_inverse = D ? inverse(Mat::from_cols(m.field(), D, ws)) : Mat(m.field(), 0, 0);
  return sd;
}

namespace {

std::vector<Mat> hom_basis_spin(const ModuleRep& M, const ModuleRep& N) {
  const std::size_t dM = M.dim(), dN = N.dim();
  const FieldPtr& f = M.field();
  const Field& F = *f;
  if (dM == 0 || dN == 0) return {};
  const GroupData& G = *M.group();
  SpinData sd = spin(M);
  const std::size_t s = sd.num_generators, cols = s * dN;
  // columns of K span the solutions found so far
  Mat K = Mat::identity(f, cols);
  for (const auto& rel : sd.relations) {
    if (K.cols() == 0) break;
    const std::size_t k = K.cols();
    Mat BK(f, dN, k);
    auto add_block = [&](std::size_t gen, const Mat& a, Elem c) {
      // BK += c * a * K[gen block]
      for (std::size_t r = 0; r < dN; ++r) {
        Elem* dst = BK.row(r);
        const Elem* ar = a.row(r);
        for (std::size_t t = 0; t < dN; ++t) {
          Elem x = F.mul(c, ar[t]);
          if (x) F.axpy(dst, x, K.row(gen * dN + t), k);
        }
      }
    };
    const std::size_t src = rel.source;
    add_block(sd.gen_of[src], N.act(G.mul(G.gen_index[rel.gen], sd.elem_of[src])), 1);
    for (std::size_t l = 0; l < rel.coeffs.size(); ++l) {
      if (!rel.coeffs[l]) continue;
      add_block(sd.gen_of[l], N.act(sd.elem_of[l]), F.neg(rel.coeffs[l]));
    }
    if (BK.is_zero()) continue;
    Mat ker = kernel_basis(BK);
    K = K * ker;
  }
  std::vector<Mat> out;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    Mat phiW(f, dN, dM);
    for (std::size_t l = 0; l < dM; ++l) {
      const Mat& a = N.act(sd.elem_of[l]);
      const std::size_t base = sd.gen_of[l] * dN;
      for (std::size_t r = 0; r < dN; ++r) {
        const Elem* ar = a.row(r);
        Elem acc = 0;
        for (std::size_t t = 0; t < dN; ++t) {
          Elem u = K(base + t, c);
          if (u && ar[t]) acc = F.add(acc, F.mul(ar[t], u));
        }
        phiW(r, l) = acc;
      }
    }
    out.push_back(phiW * sd.basis_inverse);
  }
  return out;
}

}  // namespace

std::vector<Mat> hom_basis(const ModuleRep& M, const ModuleRep& N) {
  require_same(M, N, "hom_basis");
  if (M.dim() <= N.dim()) return hom_basis_spin(M, N);
  auto t = hom_basis_spin(dual(N), dual(M));
  for (auto& x : t) x = transpose(x);
  return t;
}

std::string Fingerprint::bytes() const {
  std::string s = "d" + std::to_string(dim) + "|" + chr.bytes() + "|";
  for (const auto& part : sylow_jordan) {
    for (auto b : part) s += std::to_string(b) + ",";
    s += ";";
  }
  s += "|" + std::to_string(fixed_dim) + "," + std::to_string(cofixed_dim);
  return s;
}

Fingerprint fingerprint(const ModuleRep& m) {
  Fingerprint fp;
  fp.dim = m.dim();
  fp.chr = brauer_char(m);
  const GroupData& G = *m.group();
  for (auto h : G.sylow_gens) fp.sylow_jordan.push_back(m.dim() ? unipotent_jordan(m.act(h)) : std::vector<std::size_t>{});
  if (m.dim() == 0) return fp;
  std::vector<Mat> diffs;
  Mat I = Mat::identity(m.field(), m.dim());
  for (const auto& a : m.action()) diffs.push_back(a - I);
  if (diffs.empty()) {
    fp.fixed_dim = fp.cofixed_dim = m.dim();
  } else {
    fp.fixed_dim = m.dim() - rank(vstack(diffs));
    fp.cofixed_dim = m.dim() - rank(hstack(diffs));
  }
  return fp;
}

namespace {

// Enumerates all combinations of the basis when small enough; calls fn until it returns true.
template <class Fn>
bool enumerate_span(const std::vector<Mat>& basis, std::uint64_t q, Fn fn) {
  const std::size_t n = basis.size();
  std::vector<Elem> c(n, 0);
  const FieldPtr& f = basis[0].field();
  const Field& F = *f;
  while (true) {
    std::size_t i = 0;
    while (i < n && c[i] + 1 == q) c[i++] = 0;
    if (i == n) return false;
    ++c[i];
    Mat x(f, basis[0].rows(), basis[0].cols());
    for (std::size_t k = 0; k < n; ++k)
      if (c[k]) F.axpy(x.data().data(), c[k], basis[k].data().data(), x.data().size());
    if (fn(x)) return true;
  }
}

Mat random_combination(const std::vector<Mat>& basis, Rng& rng) {
  const FieldPtr& f = basis[0].field();
  Mat x(f, basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) {
    Elem c = static_cast<Elem>(uniform_below(rng, f->q()));
    if (c) f->axpy(x.data().data(), c, b.data().data(), x.data().size());
  }
  return x;
}

bool span_is_small(std::size_t n, std::uint64_t q, std::uint64_t cap) {
  std::uint64_t t = 1;
  for (std::size_t i = 0; i < n; ++i) {
    t *= q;
    if (t > cap) return false;
  }
  return true;
}

// Any unit among products b_i a_j (entries of End(X) for indecomposable X).
bool has_unit_pairing(const ModuleRep& X, const ModuleRep& Y) {
  auto A = hom_basis(X, Y);
  if (A.empty()) return false;
  auto B = hom_basis(Y, X);
  for (const auto& b : B)
    for (const auto& a : A)
      if (is_invertible(b * a)) return true;
  return false;
}

}  // namespace

IsoReport is_iso_report(const ModuleRep& M, const ModuleRep& N, std::uint64_t seed) {
  require_same(M, N, "is_iso");
  IsoReport rep;
  if (M.dim() != N.dim()) return rep;
  if (M.dim() == 0) {
    rep.iso = true;
    return rep;
  }
  if (fingerprint(M).bytes() != fingerprint(N).bytes()) return rep;
  auto H = hom_basis(M, N);
  if (H.empty()) return rep;
  const std::uint64_t q = M.field()->q();
  Rng rng(derive_seed(seed, 0x150));
  const std::uint64_t trials = 64 * std::max<std::uint64_t>(1, 8 / q);
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (is_invertible(random_combination(H, rng))) {
      rep.iso = true;
      return rep;
    }
  }
  if (span_is_small(H.size(), q, 1u << 20)) {
    rep.iso = enumerate_span(H, q, [](const Mat& x) { return is_invertible(x); });
    return rep;
  }
  rep.probable = true;
  return rep;
}

bool is_iso(const ModuleRep& M, const ModuleRep& N, std::uint64_t seed) { return is_iso_report(M, N, seed).iso; }

namespace {

Mat power_at_least(Mat x, std::size_t n) {
  std::size_t e = 1;
  while (e < n) {
    x = x * x;
    e *= 2;
  }
  return x;
}

// Fitting split of phi: (ker phi^N, im phi^N) if proper.
std::optional<std::pair<ModuleRep, ModuleRep>> fitting_split(const ModuleRep& X, const Mat& phi) {
  Mat pw = power_at_least(phi, X.dim());
  std::size_t r = rank(pw);
  if (r == 0 || r == X.dim()) return std::nullopt;
  return std::make_pair(submodule(X, null_space(pw)), submodule(X, column_space(pw)));
}

std::optional<std::pair<ModuleRep, ModuleRep>> try_split(const ModuleRep& X, const std::vector<Mat>& E, Rng& rng,
                                                         int trials) {
  const FieldPtr& f = X.field();
  const std::uint64_t q = f->q();
  std::optional<std::pair<ModuleRep, ModuleRep>> found;
  if (E.size() <= 6 && span_is_small(E.size(), q, 1u << 20) && X.dim() <= 64) {
    // End contains the scalars, so checking lambda = 0 over the whole span suffices
    enumerate_span(E, q, [&](const Mat& x) {
      found = fitting_split(X, x);
      return found.has_value();
    });
    return found;
  }
  Mat I = Mat::identity(f, X.dim());
  for (int t = 0; t < trials; ++t) {
    Mat phi = random_combination(E, rng);
    std::vector<Elem> lambdas;
    if (q <= 16) {
      for (Elem l = 0; l < q; ++l) lambdas.push_back(l);
    } else {
      lambdas.push_back(0);
      for (int i = 0; i < 7; ++i) lambdas.push_back(static_cast<Elem>(uniform_below(rng, q)));
    }
    for (Elem l : lambdas) {
      Mat psi = l ? phi - scalar_mul(l, I) : phi;
      found = fitting_split(X, psi);
      if (found) return found;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<ModuleRep> fitting_decompose(const ModuleRep& m, std::uint64_t seed, const FittingOptions& opt) {
  if (m.dim() > opt.max_dim)
    throw std::length_error("fitting_decompose: dimension " + std::to_string(m.dim()) + " exceeds cap " +
                            std::to_string(opt.max_dim));
  Rng rng(derive_seed(seed, 0xf17));
  std::vector<ModuleRep> stack{m}, out;
  while (!stack.empty()) {
    ModuleRep X = std::move(stack.back());
    stack.pop_back();
    if (X.dim() == 0) continue;
    if (X.dim() == 1) {
      out.push_back(std::move(X));
      continue;
    }
    auto E = hom_basis(X, X);
    if (E.size() <= 1) {
      out.push_back(std::move(X));
      continue;
    }
    auto sp = try_split(X, E, rng, opt.trials);
    if (!sp) {
      out.push_back(std::move(X));
      continue;
    }
    stack.push_back(std::move(sp->second));
    stack.push_back(std::move(sp->first));
  }
  return out;
}

Registry::Registry(GroupPtr g) : group_(std::move(g)) {}

std::size_t Registry::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

const RegistryEntry& Registry::entry(ClassId id) const {
  std::shared_lock lock(mu_);
  if (id >= entries_.size()) throw std::out_of_range("registry: unknown id " + std::to_string(id));
  return entries_[id];
}

std::vector<ClassId> Registry::ids() const {
  std::shared_lock lock(mu_);
  std::vector<ClassId> v(entries_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<ClassId>(i);
  return v;
}

namespace {

std::optional<ClassId> find_in(const std::deque<RegistryEntry>& entries,
                               const std::multimap<std::string, ClassId>& by_fp, const std::string& fpb,
                               const ModuleRep& x) {
  auto [lo, hi] = by_fp.equal_range(fpb);
  for (auto it = lo; it != hi; ++it)
    if (has_unit_pairing(entries[it->second].rep, x)) return it->second;
  return std::nullopt;
}

}  // namespace

std::optional<ClassId> Registry::find(const ModuleRep& x) const {
  std::string fpb = fingerprint(x).bytes();
  std::shared_lock lock(mu_);
  return find_in(entries_, by_fp_, fpb, x);
}

ClassId Registry::insert(const ModuleRep& x) {
  Fingerprint fp = fingerprint(x);
  std::string fpb = fp.bytes();
  std::unique_lock lock(mu_);
  if (auto id = find_in(entries_, by_fp_, fpb, x)) return *id;
  ClassId id = static_cast<ClassId>(entries_.size());
  entries_.push_back({x, std::move(fp), fpb, is_projective_indecomposable(x)});
  by_fp_.emplace(fpb, id);
  return id;
}

ClassId Registry::insert_unchecked(const ModuleRep& x) {
  Fingerprint fp = fingerprint(x);
  std::string fpb = fp.bytes();
  std::unique_lock lock(mu_);
  ClassId id = static_cast<ClassId>(entries_.size());
  entries_.push_back({x, std::move(fp), fpb, is_projective_indecomposable(x)});
  by_fp_.emplace(fpb, id);
  return id;
}

std::optional<DecompVector> Registry::regular_vector() const {
  std::shared_lock lock(mu_);
  return regular_;
}

void Registry::set_regular_vector(DecompVector v) {
  std::unique_lock lock(mu_);
  regular_ = std::move(v);
}

namespace {

struct Pairing {
  std::int64_t mult = 0;
  std::vector<Mat> pivot_maps;  // R -> T, row-reduced
};

// Local-ring elimination on the matrix (b_i a_j) over End(T).
Pairing pairing(const ModuleRep& T, const ModuleRep& R) {
  Pairing out;
  auto A = hom_basis(T, R);
  if (A.empty()) return out;
  auto B = hom_basis(R, T);
  if (B.empty()) return out;
  std::vector<std::vector<Mat>> P(B.size(), std::vector<Mat>(A.size()));
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) P[i][j] = B[i] * A[j];
  std::vector<bool> row_used(B.size(), false), col_used(A.size(), false);
  while (true) {
    std::size_t pi = B.size(), pj = A.size();
    for (std::size_t i = 0; i < B.size() && pi == B.size(); ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < A.size(); ++j) {
        if (col_used[j]) continue;
        if (is_invertible(P[i][j])) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == B.size()) break;
    row_used[pi] = col_used[pj] = true;
    ++out.mult;
    out.pivot_maps.push_back(B[pi]);
    Mat u = inverse(P[pi][pj]);
    // row operations (tracked on B) then column operations on P
    for (std::size_t i = 0; i < B.size(); ++i) {
      if (row_used[i]) continue;
      Mat c = P[i][pj] * u;
      if (c.is_zero()) continue;
      B[i] = B[i] - c * B[pi];
      for (std::size_t j = 0; j < A.size(); ++j) P[i][j] = P[i][j] - c * P[pi][j];
    }
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (col_used[j]) continue;
      Mat c = u * P[pi][j];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < B.size(); ++i) P[i][j] = P[i][j] - P[i][pj] * c;
    }
  }
  return out;
}

ModuleRep complement_of(const ModuleRep& R, const Pairing& pr) {
  Mat stack = vstack(pr.pivot_maps);
  return submodule(R, null_space(stack));
}

// Group novel indecomposables by isomorphism type, keeping first occurrences.
void add_novel(std::vector<std::pair<ModuleRep, std::int64_t>>& novel, std::vector<std::string>& fps,
               const ModuleRep& x, std::int64_t mult) {
  std::string fpb = fingerprint(x).bytes();
  for (std::size_t i = 0; i < novel.size(); ++i) {
    if (fps[i] == fpb && has_unit_pairing(novel[i].first, x)) {
      novel[i].second += mult;
      return;
    }
  }
  novel.emplace_back(x, mult);
  fps.push_back(fpb);
}

ModuleRep jordan_block_of(const GroupPtr& g, std::size_t c, std::size_t b) {
  const GroupData& G = *g;
  const FieldPtr& f = G.field();
  Mat J = Mat::identity(f, b);
  for (std::size_t i = 0; i + 1 < b; ++i) J(i, i + 1) = 1;
  // exponent of c for every element of the cyclic group
  std::vector<std::uint64_t> ex(G.order, 0);
  std::size_t x = 0;
  for (std::uint64_t k = 0; k < G.order; ++k) {
    ex[x] = k;
    x = G.mul(c, x);
  }
  std::vector<Mat> acts;
  for (auto gi : G.gen_index) acts.push_back(mat_pow(J, ex[gi]));
  return ModuleRep(g, std::move(acts), false);
}

std::optional<std::size_t> cyclic_generator(const GroupData& G) {
  for (std::size_t i = 0; i < G.order; ++i)
    if (G.element_orders[i] == G.order) return i;
  return std::nullopt;
}

}  // namespace

ModuleRep jordan_block_module(const GroupPtr& g, std::size_t b) {
  if (!g->is_cyclic_p_group()) throw std::invalid_argument("jordan_block_module: group is not a cyclic p-group");
  if (b < 1 || b > g->order) throw std::invalid_argument("jordan_block_module: block size out of range");
  return jordan_block_of(g, *cyclic_generator(*g), b);
}

DecompVector from_jordan_type(Registry& reg, const std::vector<std::size_t>& partition) {
  std::map<std::size_t, std::int64_t> blocks;
  for (auto b : partition) ++blocks[b];
  DecompVector v;
  for (auto [b, k] : blocks) v[reg.insert(jordan_block_module(reg.group(), b))] += k;
  return v;
}

std::int64_t summand_multiplicity(const ModuleRep& T, const ModuleRep& M) {
  require_same(T, M, "summand_multiplicity");
  return pairing(T, M).mult;
}

LocalDecomposition decompose_local(const ModuleRep& m, const Registry& reg, std::uint64_t seed,
                                   const DecomposeOptions& opt) {
  if (m.group() != reg.group() && !same_group(*m.group(), *reg.group()))
    throw std::invalid_argument("decompose: module and registry over different groups");
  if (m.dim() > opt.fitting.max_dim)
    throw std::length_error("decompose: dimension " + std::to_string(m.dim()) + " exceeds cap " +
                            std::to_string(opt.fitting.max_dim));
  LocalDecomposition out;
  if (m.dim() == 0) return out;
  const GroupData& G = *m.group();
  std::vector<std::string> fps;

  if (opt.strategy == DecomposeOptions::Strategy::automatic && G.is_cyclic_p_group()) {
    std::size_t c = *cyclic_generator(G);
    std::map<std::size_t, std::int64_t> blocks;
    for (auto b : unipotent_jordan(m.act(c))) ++blocks[b];
    for (auto [b, k] : blocks) {
      ModuleRep J = jordan_block_of(m.group(), c, b);
      if (auto id = reg.find(J))
        out.known[*id] += k;
      else
        add_novel(out.novel, fps, J, k);
    }
    return out;
  }

  const std::size_t n_known = reg.size();
  std::vector<std::pair<ClassId, std::int64_t>> hits;
  std::size_t covered = 0;
  for (ClassId id = 0; id < n_known && covered < m.dim(); ++id) {
    const ModuleRep& T = reg.entry(id).rep;
    if (T.dim() > m.dim() - covered) continue;
    std::int64_t k = pairing(T, m).mult;
    if (k > 0) {
      hits.emplace_back(id, k);
      out.known[id] += k;
      covered += static_cast<std::size_t>(k) * T.dim();
    }
  }
  if (covered == m.dim()) return out;

  ModuleRep rest = m;
  for (auto [id, k] : hits) {
    Pairing pr = pairing(reg.entry(id).rep, rest);
    if (pr.mult != k) throw std::logic_error("decompose: inconsistent summand multiplicity");
    rest = complement_of(rest, pr);
  }
  if (rest.dim() != m.dim() - covered) throw std::logic_error("decompose: complement has wrong dimension");
  for (auto& x : fitting_decompose(rest, seed, opt.fitting)) add_novel(out.novel, fps, x, 1);
  return out;
}

DecompVector merge_local(Registry& reg, LocalDecomposition d) {
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> order;
  for (std::size_t i = 0; i < d.novel.size(); ++i)
    order.emplace_back(d.novel[i].first.dim(), fingerprint(d.novel[i].first).bytes(), i);
  std::sort(order.begin(), order.end());
  DecompVector v = d.known;
  for (auto& [dim, fpb, i] : order) v[reg.insert(d.novel[i].first)] += d.novel[i].second;
  return v;
}

DecompVector decompose(const ModuleRep& m, Registry& reg, std::uint64_t seed, const DecomposeOptions& opt) {
  return merge_local(reg, decompose_local(m, reg, seed, opt));
}

std::size_t projective_part_dim(const ModuleRep& m) {
  const GroupData& G = *m.group();
  if (m.dim() == 0) return 0;
  return static_cast<std::size_t>(G.p_part) * rank(trace_operator(m, G.sylow));
}

bool is_projective_indecomposable(const ModuleRep& m) { return m.dim() > 0 && projective_part_dim(m) == m.dim(); }

ProjectiveSplit split_projective(const DecompVector& v, const Registry& reg) {
  ProjectiveSplit s;
  for (auto [id, k] : v) (reg.entry(id).projective ? s.projective : s.nonprojective)[id] = k;
  return s;
}

DecompVector register_regular(Registry& reg, std::uint64_t seed) {
  if (auto v = reg.regular_vector()) return *v;
  DecompVector v = decompose(regular_rep(reg.group()), reg, seed);
  reg.set_regular_vector(v);
  return v;
}

std::int64_t free_rank(const DecompVector& v, const Registry& reg) {
  auto r = reg.regular_vector();
  if (!r) throw std::logic_error("free_rank: regular representation not registered");
  std::int64_t best = -1;
  for (auto [id, k] : *r) {
    auto it = v.find(id);
    std::int64_t have = it == v.end() ? 0 : it->second;
    std::int64_t c = have / k;
    best = best < 0 ? c : std::min(best, c);
  }
  return std::max<std::int64_t>(best, 0);
}

DecompVector nonfree(const DecompVector& v, const Registry& reg) {
  std::int64_t r = free_rank(v, reg);
  return dv_sub(v, dv_scale(*reg.regular_vector(), r));
}

std::size_t dv_dim(const DecompVector& v, const Registry& reg) {
  std::int64_t d = 0;
  for (auto [id, k] : v) d += k * static_cast<std::int64_t>(reg.entry(id).rep.dim());
  if (d < 0) throw std::invalid_argument("dv_dim: negative dimension");
  return static_cast<std::size_t>(d);
}

GroupPtr extend_group(const GroupPtr& g, std::uint32_t s) {
  static std::mutex mu;
  static std::map<std::pair<const GroupData*, std::uint32_t>, std::pair<GroupPtr, GroupPtr>> cache;
  if (s == 1) return g;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.get(), s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.second;
  auto emb = make_embedding(g->field(), s);
  std::vector<Mat> gens;
  for (const auto& a : g->rep.gens) gens.push_back(embed(a, *emb));
  GroupPtr ext = close_group(Representation::make(emb->to, std::move(gens), g->rep.names), g->order);
  cache.emplace(key, std::make_pair(g, ext));
  return ext;
}

ModuleRep extend_scalars(const ModuleRep& m, std::uint32_t s) {
  if (s < 1) throw std::invalid_argument("extend_scalars: degree must be >= 1");
  if (s == 1) return m;
  GroupPtr ext = extend_group(m.group(), s);
  auto emb = make_embedding(m.field(), s);
  std::vector<Mat> acts;
  for (const auto& a : m.action()) acts.push_back(embed(a, *emb));
  return ModuleRep(ext, std::move(acts), false);
}

}  // namespace symrep
