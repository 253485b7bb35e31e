#include "doctest.h"
#include "fixtures.hpp"
#include "symrep/koszul.hpp"

using namespace symrep;
using namespace symrep::fixtures;

namespace {

bool tau_squares_to_zero(const KoszulComplex& K) {
  for (std::size_t r = 1; r < K.d; ++r) {
    if (K.dims[r + 1] == 0 || K.dims[r - 1] == 0) continue;
    Mat z = K.tau[r] * K.tau[r + 1];
    if (rank(z) != 0) return false;
  }
  return true;
}

bool equivariant(SymContext& ctx, const KoszulComplex& K) {
  for (std::size_t r = 1; r <= K.d; ++r) {
    if (K.dims[r] == 0 || K.dims[r - 1] == 0) continue;
    ModuleRep hi = complex_term(ctx, K, r), lo = complex_term(ctx, K, r - 1);
    for (std::size_t g = 0; g < hi.action().size(); ++g)
      if (lo.action()[g] * K.tau[r] != K.tau[r] * hi.action()[g]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("koszul") {
  TEST_CASE("norm forms are invariant") {
    Rng rng(3);
    for (auto& g : all_fixture_groups()) {
      Vec r(g->rep.dim);
      for (auto& x : r) x = static_cast<Elem>(uniform_below(rng, g->field()->q()));
      Form N = norm_form(*g, r);
      CHECK(N.degree == g->order);
      CHECK(is_invariant(*g, N));
    }
  }

  TEST_CASE("trivial group examples") {
    auto G = trivial_group(Field::get(5, 1), 2);
    Registry reg(G);
    SymContext ctx(G, reg, 1);
    auto fc = choose_forms(ctx, 7);
    REQUIRE(fc.forms.size() == 1);
    CHECK(fc.m == 1);
    CHECK(fc.forms[0].degree == 1);
    auto K = build_complex(ctx, fc.forms, 2, 0);
    CHECK(K.dims == std::vector<std::size_t>{3, 2});
    auto ex = check_exact(K);
    CHECK(ex.ok());
    CHECK(ex.coker_dim == 1);
    auto sp = check_split_stagewise(ctx, K);
    CHECK(sp.all_split);
    CHECK(sp.Q_free);
    auto eu = euler_identity(ctx, 1, 0, 2, ex.coker_dim);
    CHECK(eu.q == 1);
    CHECK(eu.consistent);
    auto pr = surface_progression_check(ctx, 1, 0, 1, 6);
    CHECK(pr.ok);
    CHECK(pr.constant.empty());
  }

  TEST_CASE("term dimensions are binomial") {
    auto G = c2_p2_f4();
    Registry reg(G);
    SymContext ctx(G, reg, 2);
    auto fc = choose_forms(ctx, 2);
    CHECK(fc.m == 2);
    auto K = build_complex(ctx, fc.forms, 4, 1);
    CHECK(K.dims == std::vector<std::size_t>{55, 2 * 36, 21});
    CHECK(tau_squares_to_zero(K));
    CHECK(equivariant(ctx, K));
    CHECK_THROWS_AS(build_complex(ctx, fc.forms, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_complex(ctx, fc.forms, 2, 2), std::invalid_argument);
  }

  TEST_CASE("repeated form is not exact") {
    auto G = c2_p2_f4();
    Registry reg(G);
    SymContext ctx(G, reg, 3);
    auto fc = choose_forms(ctx, 3);
    std::vector<Form> bad{fc.forms[0], fc.forms[0]};
    auto ex = check_exact(build_complex(ctx, bad, 4, 0));
    REQUIRE(ex.exact_at.size() == 2);
    CHECK(!ex.exact_at[0]);
    CHECK(!ex.ok());
    auto sp = check_split_stagewise(ctx, build_complex(ctx, bad, 4, 0));
    CHECK(!sp.error.empty());
  }

  TEST_CASE("C2 on P2: exact, split and Euler class 2[kG]") {
    auto G = c2_p2_f4();
    Registry reg(G);
    SymContext ctx(G, reg, 4);
    auto fc = choose_forms(ctx, 4);
    auto mu0 = find_mu0(ctx, fc.forms, 6);
    REQUIRE(mu0);
    CHECK(*mu0 <= 2);
    for (std::size_t t = std::max<std::size_t>(*mu0, 2); t <= *mu0 + 3; ++t)
      for (std::size_t j = 0; j < 2; ++j) {
        auto K = build_complex(ctx, fc.forms, t, j);
        auto ex = check_exact(K);
        CHECK(ex.ok());
        CHECK(ex.coker_dim == 4);
        auto sp = check_split_stagewise(ctx, K);
        CHECK(sp.fast_path);
        CHECK(sp.all_split);
        CHECK(sp.Q_free);
        CHECK(sp.Q_free_rank == 2);
        auto eu = euler_identity(ctx, 2, j, t, ex.coker_dim);
        CHECK(eu.q == 2);
        CHECK(eu.consistent);
      }
  }

  TEST_CASE("fast and generic splitting agree") {
    for (auto G : {c2_p2_f4(), cyclic_unipotent(3), c3_p3_f9()}) {
      Registry reg(G);
      SymContext ctx(G, reg, 5);
      auto fc = choose_forms(ctx, 5);
      const std::size_t d = G->rep.dim - 1;
      for (std::size_t t = d; t <= d + (d == 3 ? 0 : 2); ++t)
        for (std::size_t j = 0; j < fc.m; ++j) {
          auto K = build_complex(ctx, fc.forms, t, j);
          auto fast = check_split_stagewise(ctx, K, true);
          auto slow = check_split_stagewise(ctx, K, false);
          CHECK(fast.fast_path);
          CHECK(!slow.fast_path);
          CHECK(fast.all_split == slow.all_split);
          CHECK(fast.Q == slow.Q);
          REQUIRE(fast.stages.size() == slow.stages.size());
          for (std::size_t r = 0; r < fast.stages.size(); ++r) {
            CHECK(fast.stages[r].kernel == slow.stages[r].kernel);
            CHECK(fast.stages[r].quotient == slow.stages[r].quotient);
            CHECK(fast.stages[r].split == slow.stages[r].split);
          }
        }
    }
  }

  TEST_CASE("Krull-Schmidt criterion on synthetic sequences") {
    Rng rng(31);
    int split_cases = 0, nonsplit_cases = 0;
    for (auto& G : {klein_four(), c2xc2_f2(), cyclic_unipotent(3), gl2_f2()}) {
      Registry reg(G);
      for (int t = 0; t < 5; ++t) {
        auto A = random_module(G, 6, rng), B = random_module(G, 6, rng);
        // A as a summand of A + B, moved by a random change of basis
        auto C = direct_sum({A, B});
        Mat P = random_invertible(C.field(), C.dim(), rng);
        Mat cols(C.field(), C.dim(), A.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
          for (std::size_t r = 0; r < C.dim(); ++r) cols(r, i) = P(r, i);
        CHECK(ks_split(conjugate(C, P), column_space(cols), reg, 1));
        ++split_cases;

        // socle of an indecomposable of dimension >= 2, plus a disjoint summand
        auto parts = fitting_decompose(direct_sum({A, B}), 2);
        const ModuleRep* M = nullptr;
        for (auto& x : parts)
          if (x.dim() >= 2 && !is_projective_indecomposable(x) && (!M || x.dim() > M->dim())) M = &x;
        if (!M) continue;
        std::vector<Mat> rows;
        for (auto& a : M->action()) rows.push_back(a - Mat::identity(M->field(), M->dim()));
        Subspace soc = null_space(vstack(rows));
        if (soc.dim() == 0 || soc.dim() == M->dim()) continue;
        auto D = direct_sum({*M, B});
        Mat emb(D.field(), D.dim(), soc.dim());
        for (std::size_t i = 0; i < soc.dim(); ++i)
          for (std::size_t r = 0; r < M->dim(); ++r) emb(r, i) = soc.basis(r, i);
        CHECK(!ks_split(D, column_space(emb), reg, 2));
        ++nonsplit_cases;
      }
    }
    CHECK(split_cases + nonsplit_cases >= 20);
    CHECK(nonsplit_cases >= 5);
  }

  TEST_CASE("surface progression for C2 on P2") {
    auto G = c2_p2_f4();
    Registry reg(G);
    SymContext ctx(G, reg, 6);
    auto pr = surface_progression_check(ctx, 2, 0, 1, 10);
    CHECK(pr.ok);
    REQUIRE(pr.threshold);
    CHECK(!pr.constant.empty());
    for (std::size_t i = *pr.threshold - 1; i < pr.diffs.size(); ++i) CHECK(pr.diffs[i] == pr.constant);
  }

  TEST_CASE("surface progression for a semisimple group is trivial") {
    auto f = Field::get(2, 1);
    auto G = group(f, {mat(f, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}})});
    Registry reg(G);
    SymContext ctx(G, reg, 7);
    auto pr = surface_progression_check(ctx, 3, 0, 1, 6);
    REQUIRE(pr.ok);
    for (std::size_t n = 0; n < 12; ++n) CHECK(split_projective(ctx.decomposition(n), reg).nonprojective.empty());
  }
}
