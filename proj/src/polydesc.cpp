#include "symrep/polydesc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "symrep/characters.hpp"

namespace symrep {

std::string rational_str(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

int Polynomial::degree() const { return static_cast<int>(coeffs.size()) - 1; }

void Polynomial::trim() {
  while (!coeffs.empty() && coeffs.back().numerator() == 0) coeffs.pop_back();
}

Rational Polynomial::eval(std::int64_t x) const {
  Rational r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * Rational(x) + coeffs[i];
  return r;
}

std::string Polynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].numerator() == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + rational_str(coeffs[i]) + ")";
    if (i) s += "*t^" + std::to_string(i);
  }
  return s;
}

Polynomial newton_polynomial(const std::vector<std::int64_t>& values, std::size_t n0, std::size_t count) {
  // forward differences at n0
  std::vector<std::int64_t> cur(values.begin() + static_cast<std::ptrdiff_t>(n0),
                                values.begin() + static_cast<std::ptrdiff_t>(n0 + count));
  std::vector<std::int64_t> diffs;
  for (std::size_t k = 0; k < count; ++k) {
    diffs.push_back(cur[0]);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = cur[i + 1] - cur[i];
    cur.pop_back();
  }
  // sum_l diffs[l] * C(x - n0, l), product form expanded incrementally
  Polynomial out;
  Rational fact = 1;
  std::vector<Rational> prod{Rational(1)};
  out.coeffs.assign(count, Rational(0));
  for (std::size_t l = 0; l < count; ++l) {
    if (l > 0) {
      // prod *= (x - n0 - (l-1))
      Rational shift = -Rational(static_cast<long long>(n0 + l - 1));
      std::vector<Rational> nxt(prod.size() + 1, Rational(0));
      for (std::size_t i = 0; i < prod.size(); ++i) {
        nxt[i + 1] += prod[i];
        nxt[i] += prod[i] * shift;
      }
      prod = std::move(nxt);
      fact *= Rational(static_cast<long long>(l));
    }
    for (std::size_t i = 0; i < prod.size(); ++i) out.coeffs[i] += Rational(diffs[l]) * prod[i] / fact;
  }
  out.trim();
  return out;
}

std::optional<TailFit> fit_polynomial_tail(const std::vector<std::int64_t>& seq, int dmax) {
  if (dmax < 0) throw std::invalid_argument("fit_polynomial_tail: negative degree bound");
  const std::size_t k = static_cast<std::size_t>(dmax) + 1;
  if (seq.size() < k + 2) throw std::invalid_argument("fit_polynomial_tail: sequence too short");
  auto d = delta_seq(seq, k);
  std::size_t n0 = d.size();
  while (n0 > 0 && d[n0 - 1] == 0) --n0;
  if (n0 == d.size()) return std::nullopt;
  TailFit fit;
  fit.n0 = n0;
  fit.poly = newton_polynomial(seq, n0, std::min(k, seq.size() - n0));
  for (std::size_t n = n0; n < seq.size(); ++n)
    if (fit.poly.eval(static_cast<std::int64_t>(n)) != Rational(seq[n])) return std::nullopt;
  return fit;
}

int PolynomialDescription::degree() const {
  int d = -1;
  for (const auto& [k, p] : P) d = std::max(d, p.degree());
  return d;
}

DecompVector PolynomialDescription::evaluate(std::size_t n) const {
  DecompVector v;
  const std::size_t a = n % m, t = n / m;
  for (const auto& [key, p] : P) {
    if (key.first != a) continue;
    Rational x = p.eval(static_cast<std::int64_t>(t));
    if (x.denominator() != 1) throw std::logic_error("description: non-integral value");
    if (x.numerator() != 0) v[key.second] = x.numerator();
  }
  return v;
}

std::optional<PolynomialDescription> detect_description(const std::vector<DecompVector>& seq,
                                                        const std::vector<std::size_t>& m_candidates, int dmax,
                                                        std::size_t holdout) {
  std::set<ClassId> ids;
  for (const auto& v : seq)
    for (auto [id, k] : v) ids.insert(id);
  std::vector<std::size_t> ms = m_candidates;
  std::sort(ms.begin(), ms.end());
  const std::size_t need = static_cast<std::size_t>(dmax) + 3 + holdout;
  for (std::size_t m : ms) {
    if (m == 0) continue;
    PolynomialDescription desc;
    desc.m = m;
    bool ok = true;
    std::set<ClassId> used;
    for (std::size_t a = 0; a < m && ok; ++a) {
      std::vector<const DecompVector*> sub;
      for (std::size_t n = a; n < seq.size(); n += m) sub.push_back(&seq[n]);
      if (sub.size() < need) {
        ok = false;
        break;
      }
      const std::size_t fit_len = sub.size() - holdout;
      for (ClassId id : ids) {
        std::vector<std::int64_t> s;
        for (auto* v : sub) {
          auto it = v->find(id);
          s.push_back(it == v->end() ? 0 : it->second);
        }
        std::vector<std::int64_t> head(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(fit_len));
        auto fit = fit_polynomial_tail(head, dmax);
        if (!fit) {
          ok = false;
          break;
        }
        for (std::size_t t = fit_len; t < s.size(); ++t)
          if (fit->poly.eval(static_cast<std::int64_t>(t)) != Rational(s[t])) ok = false;
        if (!ok) break;
        desc.t_min = std::max(desc.t_min, fit->n0);
        if (!fit->poly.is_zero()) {
          desc.P[{a, id}] = fit->poly;
          used.insert(id);
        }
      }
    }
    if (!ok) continue;
    desc.U.assign(used.begin(), used.end());
    return desc;
  }
  return std::nullopt;
}

std::vector<std::size_t> default_m_candidates(std::uint64_t group_order) {
  const std::uint64_t sq = group_order * group_order;
  std::vector<std::size_t> out;
  for (std::uint64_t d = 1; d <= sq; ++d)
    if (sq % d == 0) out.push_back(static_cast<std::size_t>(d));
  return out;
}

GrowthReport growth_degree(const std::vector<std::int64_t>& dims, std::size_t m, int dmax) {
  if (m == 0) throw std::invalid_argument("growth_degree: period must be positive");
  GrowthReport rep;
  rep.m = m;
  int deg = -1;
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::int64_t> s;
    for (std::size_t n = a; n < dims.size(); n += m) s.push_back(dims[n]);
    if (s.size() < 4) throw std::invalid_argument("growth_degree: need at least 4 values per residue");
    int dm = std::min<int>(dmax, static_cast<int>(s.size()) - 3);
    auto fit = fit_polynomial_tail(s, dm);
    if (!fit) return rep;
    rep.Q.push_back(fit->poly);
    rep.thresholds.push_back(fit->n0);
    deg = std::max(deg, fit->poly.degree());
  }
  rep.ok = true;
  if (deg >= 0) rep.degree = deg;
  return rep;
}

BoundedGrowthReport bounded_growth_check(const std::vector<std::int64_t>& seq, int c,
                                         const std::vector<std::size_t>& m_candidates) {
  if (c < 0) throw std::invalid_argument("bounded_growth_check: c must be >= 0");
  BoundedGrowthReport rep;
  rep.c = c;
  for (auto x : seq) rep.bound = std::max(rep.bound, x);
  std::vector<std::size_t> ms = m_candidates;
  std::sort(ms.begin(), ms.end());
  for (std::size_t m : ms) {
    if (m == 0 || seq.size() / m < static_cast<std::size_t>(c) + 4) continue;
    bool ok = true;
    int deg = -1;
    for (std::size_t a = 0; a < m && ok; ++a) {
      std::vector<std::int64_t> s;
      for (std::size_t n = a; n < seq.size(); n += m) s.push_back(seq[n]);
      auto fit = fit_polynomial_tail(s, c);
      if (!fit) ok = false;
      else deg = std::max(deg, fit->poly.degree());
    }
    if (ok) {
      rep.ok = rep.exact = true;
      rep.m = m;
      if (deg >= 0) rep.degree = deg;
      return rep;
    }
  }
  // heuristic fallback
  rep.heuristic = true;
  double prev = -1;
  rep.ratio_monotone = true;
  const std::size_t start = seq.size() / 2;
  for (std::size_t n = std::max<std::size_t>(start, 1); n < seq.size(); ++n) {
    double r = static_cast<double>(seq[n]) / std::pow(static_cast<double>(n), c);
    rep.sup_ratio = std::max(rep.sup_ratio, r);
    if (prev >= 0 && r > prev) rep.ratio_monotone = false;
    prev = r;
  }
  return rep;
}

}  // namespace symrep
