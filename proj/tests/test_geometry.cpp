#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "symrep/geometry.hpp"

using namespace symrep;
using namespace symrep::fixtures;

namespace {

std::vector<int> dims_only(const std::vector<FixedComponent>& v) {
  std::vector<int> out;
  for (auto& c : v) out.push_back(c.dim);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("fixed_dims examples") {
    auto c2 = cyclic_unipotent(2);
    auto id = fixed_dims(c2, 0);
    REQUIRE(id.size() == 1);
    CHECK(id[0].exponent == 0);
    CHECK(id[0].dim == 1);
    CHECK(dims_only(fixed_dims(c2, c2->gen_index[0])) == std::vector<int>{0});

    auto f = Field::get(2, 2);
    auto g = group(f, {mat(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}})});
    CHECK(dims_only(fixed_dims(g, g->gen_index[0])) == std::vector<int>{0, 1});
  }

  TEST_CASE("ramification examples") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto r = ramification(cyclic_unipotent(p));
      CHECK(r.dimB == 0);
      CHECK(r.dimBp == 0);
      CHECK(r.c == 0);
      CHECK(r.cp == 0);
      CHECK(r.generically_free);
    }
    auto s3 = ramification(gl2_f2());
    CHECK(s3.c == 0);
    CHECK(s3.cp == 0);
    CHECK(s3.elements.size() == 5);

    auto c2 = ramification(c2_p2_f4());
    CHECK(c2.cp == 1);
    CHECK(c2.c == 1);

    // p does not divide |G|: no p-elements besides the identity
    auto c3 = ramification(cyclic3_f2());
    CHECK(c3.dimBp == -1);
    CHECK(c3.dimB == 0);  // two fixed points, defined over GF(4)
  }

  TEST_CASE("scalar elements are rejected") {
    auto f = Field::get(3, 1);
    auto g = group(f, {mat(f, {{2, 0}, {0, 2}})});
    CHECK_THROWS_AS(ramification(g), std::invalid_argument);
  }

  TEST_CASE("dimB >= dimBp on fixtures") {
    for (auto& g : all_fixture_groups()) {
      if (g->order == 1) continue;
      auto r = ramification(g);
      CHECK(r.dimB >= r.dimBp);
      CHECK(r.dimB <= r.d);
    }
  }

  TEST_CASE("fixed dims are conjugation invariant") {
    Rng rng(8);
    for (auto& g : {gl2_f2(), klein_four(), c3_p3_f9()}) {
      for (int t = 0; t < 20; ++t) {
        std::size_t a = uniform_below(rng, g->order), h = uniform_below(rng, g->order);
        std::size_t conj = g->mul(g->mul(h, a), g->inverse[h]);
        CHECK(dims_only(fixed_dims(g, a)) == dims_only(fixed_dims(g, conj)));
      }
    }
  }
}
