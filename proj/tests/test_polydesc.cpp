#include "doctest.h"
#include "fixtures.hpp"
#include "symrep/polydesc.hpp"

using namespace symrep;
using namespace symrep::fixtures;

namespace {

// Sym^n of J_2 over GF(p): V_{r+1} + ((n - r)/p) V_p, r = n mod p. Class id b-1 for V_b.
DecompVector cyclic_oracle(std::size_t p, std::size_t n) {
  DecompVector v;
  const std::size_t r = n % p;
  v[static_cast<ClassId>(r)] += 1;
  if (n >= r + p) v[static_cast<ClassId>(p - 1)] += static_cast<std::int64_t>((n - r) / p);
  return v;
}

}  // namespace

TEST_SUITE("polydesc") {
  TEST_CASE("fit_polynomial_tail examples") {
    auto c = fit_polynomial_tail({5, 5, 5, 5, 5}, 0);
    REQUIRE(c);
    CHECK(c->poly.degree() == 0);
    CHECK(c->poly.coeffs[0] == Rational(5));

    std::vector<std::int64_t> lin;
    for (std::int64_t n = 0; n < 12; ++n) lin.push_back(n + 1);
    auto l = fit_polynomial_tail(lin, 3);
    REQUIRE(l);
    CHECK(l->n0 == 0);
    CHECK(l->poly == Polynomial{{Rational(1), Rational(1)}});

    CHECK(!fit_polynomial_tail({1, 2, 4, 8, 16}, 2));
    CHECK_THROWS_AS(fit_polynomial_tail({1, 2, 3}, 2), std::invalid_argument);
  }

  TEST_CASE("fit finds the least threshold") {
    // junk, then 3n^2 - n
    std::vector<std::int64_t> s{7, -4, 100};
    for (std::int64_t n = 3; n < 15; ++n) s.push_back(3 * n * n - n);
    auto f = fit_polynomial_tail(s, 2);
    REQUIRE(f);
    CHECK(f->n0 == 3);
    for (std::int64_t n = 3; n < 15; ++n) CHECK(f->poly.eval(n) == Rational(3 * n * n - n));
  }

  TEST_CASE("Newton form reproduces random polynomials") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      int deg = static_cast<int>(uniform_below(rng, 5));
      std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1);
      for (auto& x : c) x = static_cast<std::int64_t>(uniform_below(rng, 21)) - 10;
      std::vector<std::int64_t> s;
      for (std::int64_t n = 0; n < 20; ++n) {
        std::int64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * n + c[i];
        s.push_back(v);
      }
      auto f = fit_polynomial_tail(s, 6);
      REQUIRE(f);
      for (std::int64_t n = static_cast<std::int64_t>(f->n0); n < 20; ++n) CHECK(f->poly.eval(n) == Rational(s[n]));
      CHECK(f->poly.degree() <= deg);
    }
  }

  TEST_CASE("cyclic description from the Jordan closed form") {
    for (std::size_t p : {2u, 3u, 5u}) {
      std::vector<DecompVector> seq;
      for (std::size_t n = 0; n <= 60; ++n) seq.push_back(cyclic_oracle(p, n));
      auto d = detect_description(seq, default_m_candidates(p), 3);
      REQUIRE(d);
      CHECK(d->m == p);
      CHECK(d->degree() == 1);
      for (std::size_t a = 0; a < p; ++a) {
        auto& P = d->P.at({a, static_cast<ClassId>(p - 1)});
        CHECK(P.degree() == 1);
        CHECK(P.coeffs[1] == Rational(1));
        if (a + 1 < p) CHECK(d->P.at({a, static_cast<ClassId>(a)}) == Polynomial{{Rational(1)}});
      }
      for (std::size_t n = d->t_min * d->m; n <= 60; ++n) CHECK(d->evaluate(n) == seq[n]);
    }
  }

  TEST_CASE("constant sequence gives m = 1") {
    std::vector<DecompVector> seq(12, DecompVector{{0, 2}, {3, 1}});
    auto d = detect_description(seq, {1, 2, 4}, 2);
    REQUIRE(d);
    CHECK(d->m == 1);
    CHECK(d->degree() == 0);
  }

  TEST_CASE("description reproduces its input") {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t m = 1 + uniform_below(rng, 3);
      std::vector<DecompVector> seq;
      for (std::size_t n = 0; n < 40; ++n) {
        DecompVector v;
        const std::int64_t t = static_cast<std::int64_t>(n / m), a = static_cast<std::int64_t>(n % m);
        v[0] = t + a + 1;
        if (a == 0) v[1] = 2;
        v[2] = t * t;
        seq.push_back(dv_add(v, {}));
        for (auto it = seq.back().begin(); it != seq.back().end();)
          it = it->second == 0 ? seq.back().erase(it) : std::next(it);
      }
      auto d = detect_description(seq, {1, 2, 3, 4, 6}, 3);
      REQUIRE(d);
      CHECK(m % d->m == 0);
      for (std::size_t n = d->t_min * d->m; n < 40; ++n) CHECK(d->evaluate(n) == seq[n]);
    }
  }

  TEST_CASE("growth_degree examples") {
    std::vector<std::int64_t> p2;
    for (std::int64_t n = 0; n < 20; ++n) p2.push_back((n + 1) * (n + 2) / 2);
    auto g = growth_degree(p2, 1);
    CHECK(g.ok);
    CHECK(g.degree == 2);

    std::vector<std::int64_t> nonproj;  // C_2 on P^1: J_1 for even n
    for (std::int64_t n = 0; n < 20; ++n) nonproj.push_back(n % 2 == 0 ? 1 : 0);
    auto h = growth_degree(nonproj, 2);
    CHECK(h.ok);
    CHECK(h.degree == 0);

    auto z = growth_degree(std::vector<std::int64_t>(10, 0), 1);
    CHECK(z.ok);
    CHECK(!z.degree);
    CHECK_THROWS_AS(growth_degree({1, 2, 3}, 1), std::invalid_argument);
  }

  TEST_CASE("bounded_growth_check examples") {
    std::vector<std::int64_t> n;
    for (std::int64_t i = 0; i < 20; ++i) n.push_back(i);
    auto r = bounded_growth_check(n, 1);
    CHECK(r.exact);
    CHECK(r.degree == 1);

    for (std::size_t p : {2u, 3u, 5u}) {
      std::vector<std::int64_t> s;  // dim of the nonprojective part
      for (std::size_t i = 0; i <= 200; ++i) s.push_back((i % p) + 1 == p ? 0 : static_cast<std::int64_t>(i % p) + 1);
      auto b = bounded_growth_check(s, 0, default_m_candidates(p));
      CHECK(b.exact);
      CHECK(b.bound == static_cast<std::int64_t>(p) - 1);
      CHECK(b.degree == 0);
    }
    CHECK_THROWS_AS(bounded_growth_check(n, -1), std::invalid_argument);
  }

  TEST_CASE("decompositions of Sym^n have a description of degree d") {
    auto g = cyclic_unipotent(3);
    Registry reg(g);
    std::vector<DecompVector> seq;
    for (std::size_t n = 0; n <= 30; ++n) seq.push_back(decompose(sym_power(g, n), reg, n));
    auto d = detect_description(seq, default_m_candidates(3), 3);
    REQUIRE(d);
    CHECK(d->m == 3);
    CHECK(d->degree() == 1);
  }
}
