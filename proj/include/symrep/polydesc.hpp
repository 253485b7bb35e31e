#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symrep/decomp.hpp"

namespace symrep {

using Rational = boost::rational<long long>;

std::string rational_str(const Rational& r);  // "num/den"

// Polynomial in one variable with rational coefficients, low degree first.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return coeffs.empty(); }
  Rational eval(std::int64_t x) const;
  void trim();
  std::string to_string() const;
  bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }
};

// Newton interpolation: the polynomial through (n0 + i, values[i]) for the
// first `count` points.
Polynomial newton_polynomial(const std::vector<std::int64_t>& values, std::size_t n0, std::size_t count);

struct TailFit {
  Polynomial poly;  // in the index n of the input sequence
  std::size_t n0 = 0;
};

std::optional<TailFit> fit_polynomial_tail(const std::vector<std::int64_t>& seq, int dmax);

struct PolynomialDescription {
  std::size_t m = 1;
  std::size_t t_min = 0;
  std::vector<ClassId> U;
  std::map<std::pair<std::size_t, ClassId>, Polynomial> P;  // (a, id) -> polynomial in t
  int degree() const;
  // Multiplicities predicted for index n = t m + a.
  DecompVector evaluate(std::size_t n) const;
};

std::optional<PolynomialDescription> detect_description(const std::vector<DecompVector>& seq,
                                                        const std::vector<std::size_t>& m_candidates, int dmax,
                                                        std::size_t holdout = 3);

std::vector<std::size_t> default_m_candidates(std::uint64_t group_order);

struct GrowthReport {
  bool ok = false;
  std::size_t m = 1;
  std::optional<int> degree;  // empty: zero sequence
  std::vector<Polynomial> Q;  // per residue, in t
  std::vector<std::size_t> thresholds;
};

GrowthReport growth_degree(const std::vector<std::int64_t>& dims, std::size_t m, int dmax = 8);

struct BoundedGrowthReport {
  int c = 0;
  bool ok = false;
  bool exact = false;      // an exact fit of degree <= c was found
  std::size_t m = 1;       // period of that fit
  std::optional<int> degree;
  std::int64_t bound = 0;  // max over the window (c = 0)
  bool heuristic = false;
  double sup_ratio = 0;    // sup seq_n / n^c over the tail (heuristic case)
  bool ratio_monotone = false;
};

BoundedGrowthReport bounded_growth_check(const std::vector<std::int64_t>& seq, int c,
                                         const std::vector<std::size_t>& m_candidates = {1});

}  // namespace symrep
