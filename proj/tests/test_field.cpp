#include "doctest.h"
#include "symrep/field.hpp"
#include "symrep/rng.hpp"

using namespace symrep;

namespace {

using P = std::vector<std::uint32_t>;

// schoolbook remainder, used as an oracle for irreducibility
P rem(P a, const P& b, std::uint32_t p) {
  auto trim = [](P& x) {
    while (!x.empty() && x.back() == 0) x.pop_back();
  };
  trim(a);
  P bb = b;
  trim(bb);
  std::uint32_t inv = 1;
  while ((inv * bb.back()) % p != 1) ++inv;
  while (a.size() >= bb.size()) {
    std::uint32_t c = a.back() * inv % p;
    std::size_t s = a.size() - bb.size();
    for (std::size_t i = 0; i < bb.size(); ++i) a[s + i] = (a[s + i] + p * p - c * bb[i] % p) % p;
    trim(a);
  }
  return a;
}

bool brute_irreducible(const P& f, std::uint32_t p) {
  std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      P g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

P brute_canonical(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    P f(e + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[e] = 1;
    if (f[0] != 0 && brute_irreducible(f, p)) return f;
  }
  return {};
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("ff_make examples") {
    CHECK(ff_make(2, 1).modulus == P{0, 1});
    CHECK(ff_make(2, 2).modulus == P{1, 1, 1});
    CHECK(ff_make(3, 2).modulus == P{1, 0, 1});
    CHECK(ff_make(3, 2).modulus == brute_canonical(3, 2));
  }

  TEST_CASE("canonical modulus agrees with brute-force scan") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
      CAPTURE(p);
      CAPTURE(e);
      CHECK(ff_make(p, e).modulus == brute_canonical(p, e));
    }
  }

  TEST_CASE("Rabin test matches brute force on all small monic polynomials") {
    for (std::uint32_t p : {2u, 3u}) {
      for (std::uint32_t n = 1; n <= 5; ++n) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < n; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
          P f(n + 1, 0);
          std::uint64_t c = code;
          for (std::uint32_t i = 0; i < n; ++i) {
            f[i] = c % p;
            c /= p;
          }
          f[n] = 1;
          CHECK(is_irreducible(p, f) == brute_irreducible(f, p));
        }
      }
    }
  }

  TEST_CASE("ff_make errors and determinism") {
    CHECK_THROWS(ff_make(4, 1));
    CHECK_THROWS(ff_make(2, 0));
    CHECK_THROWS(ff_make(2, 17));
    CHECK_THROWS(ff_make(65537, 2));
    CHECK(ff_make(5, 3) == ff_make(5, 3));
    CHECK(Field::get(3, 2).get() == Field::get(3, 2).get());
  }

  TEST_CASE("arithmetic examples") {
    auto f2 = Field::get(2, 1);
    CHECK(f2->add(1, 1) == 0);
    auto f7 = Field::get(7, 1);
    CHECK(f7->inv(3) == 5);
    auto f4 = Field::get(2, 2);
    const Elem x = f4->from_digits({0, 1});
    CHECK(f4->mul(x, x) == f4->from_digits({1, 1}));
    CHECK_THROWS(f7->inv(0));
  }

  TEST_CASE("primitive roots") {
    CHECK(Field::get(2, 2)->primitive_root() == Field::get(2, 2)->from_digits({0, 1}));
    CHECK(Field::get(2, 1)->primitive_root() == 1);
    CHECK(Field::get(2, 1)->dlog(1) == 0);
    // brute-force order oracle for GF(7)
    auto f7 = Field::get(7, 1);
    Elem least = 0;
    for (Elem g = 1; g < 7 && !least; ++g) {
      int o = 1;
      Elem x = g;
      while (x != 1) {
        x = x * g % 7;
        ++o;
      }
      if (o == 6) least = g;
    }
    CHECK(least == 3);
    CHECK(f7->primitive_root() == 3);
    CHECK_THROWS(f7->dlog(0));
  }

  TEST_CASE("field axioms on random triples") {
    Rng rng(7);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 4}, {5, 2}, {3, 5}, {13, 2}, {257, 1}, {3, 11}, {65521, 1}, {2, 16}}) {
      auto F = Field::get(p, e);
      CAPTURE(F->q());
      for (int t = 0; t < 1000; ++t) {
        Elem a = uniform_below(rng, F->q()), b = uniform_below(rng, F->q()), c = uniform_below(rng, F->q());
        REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
        REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
        REQUIRE(F->sub(F->add(a, b), b) == a);
        if (a) REQUIRE(F->mul(a, F->inv(a)) == 1);
      }
    }
  }

  TEST_CASE("primitive root order and dlog") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {3, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 4}, {5, 3}, {3, 11}, {2, 16}}) {
      auto F = Field::get(p, e);
      const std::uint64_t n = F->q() - 1;
      Elem g = F->primitive_root();
      CHECK(F->pow(g, n) == 1);
      CHECK(F->order_of(g) == n);
      if (n <= 5000) {
        Elem x = 1;
        for (std::uint64_t k = 1; k < n; ++k) {
          x = F->mul(x, g);
          REQUIRE(x != 1);
        }
        // least primitive element by encoding
        for (Elem h = 1; h < g; ++h) CHECK(F->order_of(h) != n);
      }
      Rng rng(p * 100 + e);
      for (int t = 0; t < 200; ++t) {
        std::uint64_t k = uniform_below(rng, n);
        CHECK(F->dlog(F->pow(g, k)) == k);
      }
    }
  }

  TEST_CASE("axpy kernels agree with scalar arithmetic") {
    Rng rng(11);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {2, 2}, {2, 8}, {3, 2}, {5, 1}, {101, 1}, {257, 1}, {3, 6}}) {
      auto F = Field::get(p, e);
      for (int t = 0; t < 50; ++t) {
        std::vector<Elem> d(17), s(17);
        for (auto& x : d) x = uniform_below(rng, F->q());
        for (auto& x : s) x = uniform_below(rng, F->q());
        Elem c = uniform_below(rng, F->q());
        auto ref = d;
        for (std::size_t i = 0; i < d.size(); ++i) ref[i] = F->add(d[i], F->mul(c, s[i]));
        F->axpy(d.data(), c, s.data(), d.size());
        CHECK(d == ref);
      }
    }
  }

  TEST_CASE("element text round trip") {
    auto f9 = Field::get(3, 2);
    CHECK(f9->format(f9->from_digits({1, 2})) == "12");
    CHECK(f9->parse("12") == f9->from_digits({1, 2}));
    CHECK_THROWS(f9->parse("3"));
    CHECK_THROWS(f9->parse("130"));
    auto f169 = Field::get(13, 2);
    CHECK(f169->format(f169->from_digits({12, 3})) == "12:3");
    CHECK(f169->parse("12:3") == f169->from_digits({12, 3}));
    auto f7 = Field::get(7, 1);
    CHECK(f7->parse("-1") == 6);
    for (Elem a = 0; a < 9; ++a) CHECK(f9->parse(f9->format(a)) == a);
  }
}
