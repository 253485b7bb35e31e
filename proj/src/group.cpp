#include "symrep/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace symrep {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

Representation Representation::make(FieldPtr f, std::vector<Mat> gens, std::vector<std::string> names) {
  if (gens.empty()) throw std::invalid_argument("representation needs at least one generator");
  Representation r;
  r.field = f;
  r.dim = gens[0].rows();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (names.size() <= i) names.push_back("g" + std::to_string(i));
    const Mat& g = gens[i];
    if (g.rows() != g.cols()) throw std::invalid_argument("generator " + names[i] + " is not square");
    if (g.rows() != r.dim) throw std::invalid_argument("generator " + names[i] + " has mismatched size");
    if (!(g.F().spec() == f->spec())) throw std::invalid_argument("generator " + names[i] + " over wrong field");
    if (!is_invertible(g)) throw std::invalid_argument("generator " + names[i] + " is not invertible");
  }
  r.gens = std::move(gens);
  r.names = std::move(names);
  return r;
}

std::size_t GroupData::index_of(const Mat& m) const {
  auto it = index.find(m.bytes());
  if (it == index.end()) throw std::out_of_range("matrix is not a group element");
  return it->second;
}

std::size_t GroupData::mul(std::size_t a, std::size_t b) const {
  if (!mul_table.empty()) return mul_table[a][b];
  return index_of(elements[a] * elements[b]);
}

bool GroupData::is_p_element(std::size_t i) const {
  std::uint64_t o = element_orders[i];
  while (o % p() == 0) o /= p();
  return o == 1;
}

bool GroupData::is_p_regular(std::size_t i) const { return element_orders[i] % p() != 0; }

std::string GroupData::element_hash_bytes() const {
  std::string s;
  for (const auto& e : elements) s += e.bytes();
  return s;
}

std::vector<std::size_t> GroupData::closure(const std::vector<std::size_t>& gens) const {
  std::vector<char> in(elements.size(), 0);
  std::vector<std::size_t> out{0};
  in[0] = 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t g : gens) {
      std::size_t y = mul(out[k], g);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GroupData::is_subgroup(const std::vector<std::size_t>& h) const {
  if (h.empty()) return false;
  std::vector<char> in(elements.size(), 0);
  for (auto x : h) {
    if (x >= elements.size()) return false;
    in[x] = 1;
  }
  for (auto a : h)
    for (auto b : h)
      if (!in[mul(a, b)]) return false;
  return true;
}

bool GroupData::is_cyclic_p_group() const {
  if (p_part != order) return false;
  return std::any_of(element_orders.begin(), element_orders.end(), [&](std::uint64_t o) { return o == order; });
}

bool same_group(const GroupData& a, const GroupData& b) {
  if (&a == &b) return true;
  if (!(a.field()->spec() == b.field()->spec())) return false;
  if (a.rep.gens.size() != b.rep.gens.size()) return false;
  for (std::size_t i = 0; i < a.rep.gens.size(); ++i)
    if (a.rep.gens[i] != b.rep.gens[i]) return false;
  return true;
}

std::vector<std::size_t> sylow_p(const GroupData& g) {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> cur{0};
  std::vector<char> in(g.order, 0);
  in[0] = 1;
  for (std::size_t x = 0; x < g.order && cur.size() < g.p_part; ++x) {
    if (in[x] || !g.is_p_element(x)) continue;
    auto trial = gens;
    trial.push_back(x);
    auto h = g.closure(trial);
    std::uint64_t n = h.size();
    while (n % g.p() == 0) n /= g.p();
    if (n != 1) continue;
    gens = std::move(trial);
    cur = std::move(h);
    std::fill(in.begin(), in.end(), 0);
    for (auto y : cur) in[y] = 1;
  }
  if (cur.size() != g.p_part) throw std::logic_error("sylow_p: greedy closure did not reach p-part");
  return cur;
}

GroupPtr close_group(const Representation& rep, std::size_t cap) {
  auto G = std::make_shared<GroupData>();
  G->rep = rep;
  const FieldPtr& f = rep.field;
  Mat id = Mat::identity(f, rep.dim);
  G->elements.push_back(id);
  G->parent.push_back(0);
  G->via_gen.push_back(0);
  G->index.emplace(id.bytes(), 0);
  std::vector<std::size_t> layer{0};
  while (!layer.empty()) {
    struct Cand {
      std::string key;
      Mat m;
      std::size_t parent, gen;
    };
    std::vector<Cand> next;
    std::unordered_map<std::string, std::size_t> pending;
    for (std::size_t x : layer) {
      for (std::size_t gi = 0; gi < rep.gens.size(); ++gi) {
        Mat y = G->elements[x] * rep.gens[gi];
        std::string key = y.bytes();
        if (G->index.count(key) || pending.count(key)) continue;
        pending.emplace(key, next.size());
        next.push_back({std::move(key), std::move(y), x, gi});
        if (G->elements.size() + next.size() > cap)
          throw std::length_error("close_group: group order exceeds cap " + std::to_string(cap));
      }
    }
    std::sort(next.begin(), next.end(), [](const Cand& a, const Cand& b) { return a.key < b.key; });
    layer.clear();
    for (auto& c : next) {
      std::size_t idx = G->elements.size();
      G->index.emplace(c.key, idx);
      G->elements.push_back(std::move(c.m));
      G->parent.push_back(c.parent);
      G->via_gen.push_back(c.gen);
      layer.push_back(idx);
    }
  }
  const std::size_t n = G->elements.size();
  G->order = n;
  const std::uint32_t p = f->p();
  std::uint64_t pp = 1, rest = n;
  while (rest % p == 0) {
    rest /= p;
    pp *= p;
  }
  G->p_part = pp;
  for (const auto& g : rep.gens) G->gen_index.push_back(G->index_of(g));

  if (n <= 1024) {
    G->mul_table.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) G->mul_table[a][b] = G->index_of(G->elements[a] * G->elements[b]);
  }
  G->inverse.resize(n);
  for (std::size_t i = 0; i < n; ++i) G->inverse[i] = G->index_of(inverse(G->elements[i]));
  G->element_orders.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t o = 1;
    std::size_t x = i;
    while (x != 0) {
      x = G->mul(x, i);
      ++o;
    }
    G->element_orders[i] = o;
  }
  // conjugacy classes: orbits under conjugation by generators
  G->class_of.assign(n, SIZE_MAX);
  std::size_t cls = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (G->class_of[i] != SIZE_MAX) continue;
    std::vector<std::size_t> orbit{i};
    G->class_of[i] = cls;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (std::size_t gi : G->gen_index) {
        std::size_t y = G->mul(G->mul(gi, orbit[k]), G->inverse[gi]);
        if (G->class_of[y] == SIZE_MAX) {
          G->class_of[y] = cls;
          orbit.push_back(y);
        }
      }
    }
    if (G->is_p_regular(i)) G->p_regular_class_reps.push_back(i);
    ++cls;
  }
  G->sylow = sylow_p(*G);
  // record the greedy generators of the Sylow subgroup
  {
    std::vector<std::size_t> gens;
    std::vector<std::size_t> cur{0};
    for (std::size_t x : G->sylow) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      gens.push_back(x);
      cur = G->closure(gens);
    }
    G->sylow_gens = gens;
  }
  return G;
}

// ---------------------------------------------------------------- ModuleRep

ModuleRep::ModuleRep(GroupPtr g, std::vector<Mat> action, bool validate)
    : group_(std::move(g)), action_(std::move(action)), cache_(std::make_shared<Cache>()) {
  if (action_.size() != group_->rep.gens.size())
    throw std::invalid_argument("module: need one action matrix per generator");
  dim_ = action_.empty() ? 0 : action_[0].rows();
  for (std::size_t i = 0; i < action_.size(); ++i) {
    const Mat& a = action_[i];
    if (a.rows() != dim_ || a.cols() != dim_)
      throw std::invalid_argument("module: action matrix " + std::to_string(i) + " has wrong shape");
    if (!(a.F().spec() == field()->spec())) throw std::invalid_argument("module: field mismatch");
  }
  if (!validate) return;
  const auto& E = element_actions();
  const GroupData& G = *group_;
  const std::uint64_t work = G.order * action_.size() * dim_ * dim_ * std::max<std::size_t>(dim_, 1);
  auto check = [&](std::size_t i, std::size_t gi) {
    std::size_t j = G.mul(i, G.gen_index[gi]);
    if (E[i] * action_[gi] != E[j])
      throw std::invalid_argument("module: action does not satisfy the group relations");
  };
  if (work <= 50'000'000ull) {
    for (std::size_t i = 0; i < G.order; ++i)
      for (std::size_t gi = 0; gi < action_.size(); ++gi) check(i, gi);
  } else {
    Rng rng(0x5eed);
    for (int t = 0; t < 16; ++t) check(uniform_below(rng, G.order), uniform_below(rng, action_.size()));
  }
}

ModuleRep::ModuleRep(GroupPtr g, std::vector<Mat> action, std::vector<Mat> element_actions)
    : group_(std::move(g)), action_(std::move(action)), cache_(std::make_shared<Cache>()) {
  dim_ = action_.empty() ? 0 : action_[0].rows();
  if (element_actions.size() != group_->order) throw std::invalid_argument("module: element action count");
  std::call_once(cache_->once, [&] { cache_->mats = std::move(element_actions); });
}

const std::vector<Mat>& ModuleRep::element_actions() const {
  std::call_once(cache_->once, [this] {
    const GroupData& G = *group_;
    std::vector<Mat> mats;
    mats.reserve(G.order);
    mats.push_back(Mat::identity(field(), dim_));
    for (std::size_t i = 1; i < G.order; ++i) mats.push_back(mats[G.parent[i]] * action_[G.via_gen[i]]);
    cache_->mats = std::move(mats);
  });
  return cache_->mats;
}

ModuleRep trivial_module(const GroupPtr& g, std::size_t dim) {
  std::vector<Mat> a(g->rep.gens.size(), Mat::identity(g->field(), dim));
  return ModuleRep(g, std::move(a), false);
}

ModuleRep natural_module(const GroupPtr& g) { return ModuleRep(g, g->rep.gens, false); }

ModuleRep regular_rep(const GroupPtr& g) {
  const std::size_t n = g->order;
  std::vector<Mat> acts;
  for (std::size_t gi : g->gen_index) {
    Mat m(g->field(), n, n);
    for (std::size_t h = 0; h < n; ++h) m(g->mul(gi, h), h) = 1;
    acts.push_back(std::move(m));
  }
  return ModuleRep(g, std::move(acts), n <= 64);
}

ModuleRep restrict_module(const ModuleRep& m, const std::vector<std::size_t>& subgroup) {
  const GroupData& G = *m.group();
  if (!G.is_subgroup(subgroup)) throw std::invalid_argument("restrict: not a subgroup");
  std::vector<std::size_t> gens;
  std::vector<std::size_t> cur{0};
  std::vector<std::size_t> sorted = subgroup;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t h : sorted) {
    if (std::binary_search(cur.begin(), cur.end(), h)) continue;
    gens.push_back(h);
    cur = G.closure(gens);
  }
  std::vector<Mat> gm, act;
  if (gens.empty()) {
    gm.push_back(G.elements[0]);
    act.push_back(Mat::identity(m.field(), m.dim()));
  }
  for (auto h : gens) {
    gm.push_back(G.elements[h]);
    act.push_back(m.act(h));
  }
  auto H = close_group(Representation::make(G.field(), gm));
  return ModuleRep(H, std::move(act), false);
}

ModuleRep dual(const ModuleRep& m) {
  const GroupData& G = *m.group();
  std::vector<Mat> elems(G.order);
  for (std::size_t i = 0; i < G.order; ++i) elems[i] = transpose(m.act(G.inverse[i]));
  std::vector<Mat> gens;
  for (auto gi : G.gen_index) gens.push_back(elems[gi]);
  return ModuleRep(m.group(), std::move(gens), std::move(elems));
}

ModuleRep direct_sum(const std::vector<ModuleRep>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty");
  const auto& g = parts[0].group();
  std::vector<Mat> acts;
  for (std::size_t gi = 0; gi < g->rep.gens.size(); ++gi) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) {
      if (!same_group(*p.group(), *g)) throw std::invalid_argument("direct_sum: group mismatch");
      if (p.dim() == 0) continue;
      blocks.push_back(p.action()[gi]);
    }
    acts.push_back(blocks.empty() ? Mat(g->field(), 0, 0) : block_diag(blocks));
  }
  return ModuleRep(g, std::move(acts), false);
}

ModuleRep conjugate(const ModuleRep& m, const Mat& p) {
  Mat pi = inverse(p);
  std::vector<Mat> acts;
  for (const auto& a : m.action()) acts.push_back(p * a * pi);
  return ModuleRep(m.group(), std::move(acts), false);
}

ModuleRep submodule(const ModuleRep& m, const Subspace& s) {
  std::vector<Mat> acts;
  for (const auto& a : m.action()) acts.push_back(restrict_to(a, s));
  return ModuleRep(m.group(), std::move(acts), false);
}

ModuleRep quotient_module(const ModuleRep& m, const Subspace& s) {
  std::vector<Mat> acts;
  for (const auto& a : m.action()) acts.push_back(quotient_action(a, s));
  return ModuleRep(m.group(), std::move(acts), false);
}

Mat trace_operator(const ModuleRep& m, const std::vector<std::size_t>& subgroup) {
  if (!m.group()->is_subgroup(subgroup)) throw std::invalid_argument("trace_operator: not a subgroup");
  Mat t(m.field(), m.dim(), m.dim());
  for (auto h : subgroup) t = t + m.act(h);
  return t;
}

namespace {

// Smallest submodule containing the given vectors (as columns of v).
Subspace spin_span(const ModuleRep& m, const Mat& v) {
  Mat cur = v;
  std::size_t r = 0;
  for (;;) {
    std::vector<Mat> parts{cur};
    for (const auto& a : m.action()) parts.push_back(a * cur);
    Subspace s = column_space(hstack(parts));
    if (s.dim() == r) return s;
    r = s.dim();
    cur = s.basis;
  }
}

}  // namespace

ModuleRep random_module(const GroupPtr& g, std::size_t max_dim, Rng& rng) {
  std::vector<ModuleRep> blocks;
  std::size_t total = 0;
  auto reg = regular_rep(g);
  auto nat = natural_module(g);
  std::size_t target = 1 + uniform_below(rng, max_dim);
  for (int attempt = 0; attempt < 64 && total < target; ++attempt) {
    ModuleRep b;
    switch (uniform_below(rng, 6)) {
      case 0:
        b = trivial_module(g);
        break;
      case 1:
        b = nat;
        break;
      case 2:
        b = dual(nat);
        break;
      case 3:
        b = reg;
        break;
      default: {
        // cyclic submodule or quotient of the regular module
        Mat v = random_mat(g->field(), reg.dim(), 1, rng);
        if (v.is_zero()) continue;
        Subspace s = spin_span(reg, v);
        b = uniform_below(rng, 2) ? submodule(reg, s) : quotient_module(reg, s);
        break;
      }
    }
    if (b.dim() == 0 || total + b.dim() > max_dim) continue;
    blocks.push_back(b);
    total += b.dim();
  }
  if (blocks.empty()) blocks.push_back(trivial_module(g));
  ModuleRep sum = direct_sum(blocks);
  return conjugate(sum, random_invertible(g->field(), sum.dim(), rng));
}

// ---------------------------------------------------------------- Sym powers

std::uint64_t MonomialBasis::count(std::size_t vars, std::size_t degree) {
  if (vars == 0) return degree == 0 ? 1 : 0;
  return binomial(degree + vars - 1, vars - 1);
}

MonomialBasis::MonomialBasis(std::size_t vars, std::size_t degree)
    : vars_(vars), degree_(degree), count_(static_cast<std::size_t>(count(vars, degree))) {
  mons_.reserve(count_);
  std::vector<std::uint16_t> a(vars, 0);
  // descending lex enumeration
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t rem) {
    if (i + 1 == vars) {
      a[i] = static_cast<std::uint16_t>(rem);
      mons_.push_back(a);
      return;
    }
    for (std::size_t x = rem + 1; x-- > 0;) {
      a[i] = static_cast<std::uint16_t>(x);
      rec(i + 1, rem - x);
    }
  };
  if (vars > 0) rec(0, degree);
  else if (degree == 0) mons_.push_back({});
}

std::size_t MonomialBasis::index_of(const std::uint16_t* a) const {
  std::size_t idx = 0;
  std::int64_t rem = static_cast<std::int64_t>(degree_);
  for (std::size_t i = 0; i + 1 < vars_; ++i) {
    std::int64_t t = rem - a[i] - 1;
    if (t >= 0) idx += static_cast<std::size_t>(count(vars_ - i, static_cast<std::size_t>(t)));
    rem -= a[i];
  }
  return idx;
}

namespace {

// Given transposed Sym^{n-1} matrices (row b = image of monomial b), build
// transposed Sym^n matrices.
std::vector<Mat> sym_step(const std::vector<Mat>& prevT, const std::vector<const Mat*>& base,
                          std::size_t vars, std::size_t n) {
  MonomialBasis lo(vars, n - 1), hi(vars, n);
  std::vector<std::size_t> up(lo.size() * vars);
  std::vector<std::uint16_t> tmp(vars);
  for (std::size_t c = 0; c < lo.size(); ++c) {
    tmp = lo.exponents(c);
    for (std::size_t k = 0; k < vars; ++k) {
      ++tmp[k];
      up[c * vars + k] = hi.index_of(tmp.data());
      --tmp[k];
    }
  }
  // for each degree-n monomial: first variable present and the lowered index
  std::vector<std::size_t> first_var(hi.size()), lowered(hi.size());
  for (std::size_t a = 0; a < hi.size(); ++a) {
    tmp = hi.exponents(a);
    std::size_t i = 0;
    while (tmp[i] == 0) ++i;
    first_var[a] = i;
    --tmp[i];
    lowered[a] = lo.index_of(tmp.data());
  }
  std::vector<Mat> out;
  out.reserve(prevT.size());
  for (std::size_t e = 0; e < prevT.size(); ++e) {
    const Mat& g = *base[e];
    const Field& F = g.F();
    Mat T(g.field(), hi.size(), hi.size());
    const Mat& P = prevT[e];
    for (std::size_t a = 0; a < hi.size(); ++a) {
      const std::size_t i = first_var[a];
      const Elem* src = P.row(lowered[a]);
      Elem* dst = T.row(a);
      for (std::size_t c = 0; c < lo.size(); ++c) {
        Elem s = src[c];
        if (!s) continue;
        const std::size_t* u = &up[c * vars];
        for (std::size_t k = 0; k < vars; ++k) {
          Elem gk = g(k, i);
          if (!gk) continue;
          Elem& d = dst[u[k]];
          d = F.add(d, F.mul(s, gk));
        }
      }
    }
    out.push_back(std::move(T));
  }
  return out;
}

}  // namespace

SymPowerTower::SymPowerTower(GroupPtr g, std::size_t max_dim) : g_(std::move(g)), max_dim_(max_dim) {
  mats_.assign(g_->order, Mat::identity(g_->field(), 1));
}

void SymPowerTower::step() {
  const std::size_t vars = g_->rep.dim;
  if (MonomialBasis::count(vars, n_ + 1) > max_dim_)
    throw std::length_error("sym_power: dimension of degree " + std::to_string(n_ + 1) + " exceeds cap " +
                            std::to_string(max_dim_));
  std::vector<const Mat*> base;
  for (const auto& e : g_->elements) base.push_back(&e);
  // mats_ holds transposes internally
  mats_ = sym_step(mats_, base, vars, n_ + 1);
  ++n_;
}

void SymPowerTower::advance_to(std::size_t n) {
  if (n < n_) throw std::invalid_argument("SymPowerTower: cannot go backwards");
  while (n_ < n) step();
}

ModuleRep SymPowerTower::module() const {
  std::vector<Mat> elems;
  elems.reserve(mats_.size());
  for (const auto& t : mats_) elems.push_back(transpose(t));
  std::vector<Mat> gens;
  for (auto gi : g_->gen_index) gens.push_back(elems[gi]);
  return ModuleRep(g_, std::move(gens), std::move(elems));
}

ModuleRep sym_power(const GroupPtr& g, std::size_t n, std::size_t max_dim) {
  if (MonomialBasis::count(g->rep.dim, n) > max_dim)
    throw std::length_error("sym_power: dimension of degree " + std::to_string(n) + " exceeds cap " +
                            std::to_string(max_dim));
  SymPowerTower t(g, max_dim);
  t.advance_to(n);
  return t.module();
}

Mat sym_power_matrix(const Mat& g, std::size_t n) {
  const std::size_t vars = g.rows();
  std::vector<Mat> cur{Mat::identity(g.field(), 1)};
  std::vector<const Mat*> base{&g};
  for (std::size_t k = 1; k <= n; ++k) cur = sym_step(cur, base, vars, k);
  return transpose(cur[0]);
}

}  // namespace symrep
