#include "symrep/characters.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace symrep {

std::vector<std::int64_t> cyclotomic_poly(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for proper divisors d
  std::vector<std::int64_t> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    auto den = cyclotomic_poly(d);
    // exact division by a monic polynomial
    const std::size_t dd = den.size() - 1;
    std::vector<std::int64_t> quo(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i >= dd; --i) {
      std::int64_t c = num[i];
      std::size_t sh = i - dd;
      quo[sh] = c;
      for (std::size_t t = 0; t <= dd; ++t) num[sh + t] -= c * den[t];
      if (i == dd) break;
    }
    num = quo;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, num);
  return num;
}

bool BrauerChar::is_zero() const {
  for (const auto& v : values)
    for (auto x : v)
      if (x) return false;
  return true;
}

std::vector<std::vector<std::int64_t>> BrauerChar::reduced() const {
  auto phi = cyclotomic_poly(N);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& v : values) {
    std::vector<std::int64_t> r = v;
    for (std::size_t i = r.size(); i-- > deg;) {
      std::int64_t c = r[i];
      if (!c) continue;
      std::size_t sh = i - deg;
      for (std::size_t t = 0; t <= deg; ++t) r[sh + t] -= c * phi[t];
    }
    r.resize(deg);
    out.push_back(std::move(r));
  }
  return out;
}

std::string BrauerChar::bytes() const {
  std::string s = std::to_string(N) + ";";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    s += std::to_string(classes[c]) + ":";
    for (auto x : values[c]) s += std::to_string(x) + ",";
    s += ";";
  }
  return s;
}

SplittingData splitting_data_for(const FieldPtr& f, std::uint64_t n) {
  SplittingData sd;
  sd.N = n;
  sd.s = static_cast<std::uint32_t>(mult_order_mod(f->q(), n));
  sd.embedding = make_embedding(f, sd.s);
  const Field& T = *sd.embedding->to;
  sd.zeta = T.pow(T.primitive_root(), (T.q() - 1) / n);
  return sd;
}

SplittingData splitting_data(const GroupData& g) {
  std::uint64_t n = 1;
  for (auto c : g.p_regular_class_reps) n = std::lcm(n, g.element_orders[c]);
  return splitting_data_for(g.field(), n);
}

BrauerChar brauer_char_of(const GroupData& g, const std::vector<const Mat*>& class_mats, std::size_t dim) {
  SplittingData sd = splitting_data(g);
  const Field& T = *sd.embedding->to;
  BrauerChar ch;
  ch.N = sd.N;
  ch.classes = g.p_regular_class_reps;
  for (std::size_t c = 0; c < ch.classes.size(); ++c) {
    std::vector<std::int64_t> v(sd.N, 0);
    const std::uint64_t o = g.element_orders[ch.classes[c]];
    if (o == 1 || dim == 0) {
      v[0] = static_cast<std::int64_t>(dim);
      ch.values.push_back(std::move(v));
      continue;
    }
    Mat a = embed(*class_mats[c], *sd.embedding);
    const std::uint64_t step = sd.N / o;
    std::int64_t total = 0;
    for (std::uint64_t k = 0; k + 1 < o; ++k) {
      Elem z = T.pow(sd.zeta, k * step);
      Mat b = a;
      for (std::size_t i = 0; i < dim; ++i) b(i, i) = T.sub(b(i, i), z);
      std::int64_t mult = static_cast<std::int64_t>(dim - rank(b));
      v[k * step] = mult;
      total += mult;
    }
    v[(o - 1) * step] = static_cast<std::int64_t>(dim) - total;
    if (v[(o - 1) * step] < 0) throw std::logic_error("brauer_char: eigenspaces exceed dimension");
    ch.values.push_back(std::move(v));
  }
  return ch;
}

BrauerChar brauer_char(const ModuleRep& m) {
  const GroupData& g = *m.group();
  std::vector<const Mat*> mats;
  for (auto c : g.p_regular_class_reps) mats.push_back(&m.act(c));
  return brauer_char_of(g, mats, m.dim());
}

namespace {

void require_compatible(const BrauerChar& a, const BrauerChar& b) {
  if (a.N != b.N || a.classes != b.classes) throw std::invalid_argument("character group mismatch");
}

}  // namespace

BrauerChar char_add(const BrauerChar& a, const BrauerChar& b) {
  require_compatible(a, b);
  BrauerChar c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i)
    for (std::size_t j = 0; j < c.values[i].size(); ++j) c.values[i][j] += b.values[i][j];
  return c;
}

BrauerChar char_sub(const BrauerChar& a, const BrauerChar& b) { return char_add(a, char_scale(b, -1)); }

BrauerChar char_scale(const BrauerChar& a, std::int64_t k) {
  BrauerChar c = a;
  for (auto& v : c.values)
    for (auto& x : v) x *= k;
  return c;
}

std::vector<std::int64_t> delta_seq(const std::vector<std::int64_t>& f, std::size_t k) {
  if (f.size() <= k) throw std::invalid_argument("delta_seq: window too short");
  std::vector<std::int64_t> cur = f;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<std::int64_t> nxt(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) nxt[i] = cur[i + 1] - cur[i];
    cur = std::move(nxt);
  }
  return cur;
}

std::vector<BrauerChar> delta_seq(const std::vector<BrauerChar>& f, std::size_t k) {
  if (f.size() <= k) throw std::invalid_argument("delta_seq: window too short");
  std::vector<BrauerChar> cur = f;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<BrauerChar> nxt;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) nxt.push_back(char_sub(cur[i + 1], cur[i]));
    cur = std::move(nxt);
  }
  return cur;
}

std::vector<BrauerChar> sym_characters(const GroupPtr& g, std::size_t max_degree) {
  SymPowerTower tower(g);
  std::vector<BrauerChar> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    tower.advance_to(n);
    // tower matrices are transposed; eigenspace dimensions are unchanged
    std::vector<const Mat*> mats;
    for (auto c : g->p_regular_class_reps) mats.push_back(&tower.element_mats()[c]);
    out.push_back(brauer_char_of(*g, mats, tower.element_mats()[0].rows()));
  }
  return out;
}

DeltaReport check_delta_vanishing_seq(const std::vector<BrauerChar>& chars, std::size_t j, std::size_t m,
                                      std::size_t k, std::size_t n_max, std::size_t confirm) {
  if (m < 1) throw std::invalid_argument("check_delta_vanishing: stride must be >= 1");
  if (m * n_max + j >= chars.size()) throw std::invalid_argument("check_delta_vanishing: characters missing");
  DeltaReport rep{j, m, k, n_max, std::nullopt, 0};
  std::vector<BrauerChar> f;
  for (std::size_t n = 0; n <= n_max; ++n) f.push_back(chars[m * n + j]);
  if (f.size() <= k) return rep;
  auto d = delta_seq(f, k);
  rep.window = d.size();
  std::size_t n0 = d.size();
  while (n0 > 0 && d[n0 - 1].is_zero()) --n0;
  if (d.size() - n0 >= confirm) rep.vanishes_from = n0;
  return rep;
}

DeltaReport check_delta_vanishing(const GroupPtr& g, std::size_t j, std::size_t m, std::size_t k, std::size_t n_max,
                                  std::size_t confirm) {
  return check_delta_vanishing_seq(sym_characters(g, m * n_max + j), j, m, k, n_max, confirm);
}

CharGrowthReport char_growth_check_seq(const GroupData& g, const std::vector<BrauerChar>& chars,
                                       std::size_t element, std::size_t a, int d_fix, std::size_t r_max,
                                       std::size_t confirm) {
  if (element == 0 || !g.is_p_regular(element))
    throw std::invalid_argument("char_growth_check: element must be p-regular and not the identity");
  CharGrowthReport rep;
  rep.element = element;
  rep.a = a;
  rep.stride = g.order;
  rep.d_fix = d_fix;
  rep.order = static_cast<std::size_t>(d_fix + 1);
  std::size_t cls = 0;
  for (; cls < g.p_regular_class_reps.size(); ++cls)
    if (g.class_of[g.p_regular_class_reps[cls]] == g.class_of[element]) break;
  if (a + g.order * r_max >= chars.size()) throw std::invalid_argument("char_growth_check: characters missing");
  std::vector<std::vector<std::int64_t>> seq;
  for (std::size_t r = 0; r <= r_max; ++r) seq.push_back(chars[a + g.order * r].reduced()[cls]);
  const std::size_t coords = seq[0].size();
  std::size_t n0 = 0, window = 0;
  for (std::size_t c = 0; c < coords; ++c) {
    std::vector<std::int64_t> s;
    for (auto& v : seq) s.push_back(v[c]);
    if (s.size() <= rep.order) return rep;
    auto d = delta_seq(s, rep.order);
    window = d.size();
    std::size_t z = d.size();
    while (z > 0 && d[z - 1] == 0) --z;
    n0 = std::max(n0, z);
  }
  if (window - std::min(window, n0) >= confirm) {
    rep.vanishes_from = n0;
    rep.ok = true;
  }
  return rep;
}

CharGrowthReport char_growth_check(const GroupPtr& g, std::size_t element, std::size_t a, int d_fix,
                                   std::size_t r_max, std::size_t confirm) {
  return char_growth_check_seq(*g, sym_characters(g, a + g->order * r_max), element, a, d_fix, r_max, confirm);
}

}  // namespace symrep
