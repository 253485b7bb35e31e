#include "doctest.h"
#include "symrep/group.hpp"
#include "symrep/matrix.hpp"

using namespace symrep;

namespace {

Mat M(FieldPtr f, std::vector<std::vector<Elem>> rows) { return Mat::from_rows(f, rows); }

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rref examples") {
    auto f2 = Field::get(2, 1);
    auto r = rref(Mat::identity(f2, 3));
    CHECK(r.rank == 3);
    auto u = M(f2, {{1, 1}, {0, 1}}) - Mat::identity(f2, 2);
    CHECK(u == M(f2, {{0, 1}, {0, 0}}));
    CHECK(rref(u).rank == 1);
    auto z = rref(Mat(f2, 4, 5));
    CHECK(z.rank == 0);
    CHECK(z.reduced.is_zero());
  }

  TEST_CASE("rref is reduced and row equivalent") {
    auto f5 = Field::get(5, 1);
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      Mat a = random_mat(f5, 4, 6, rng);
      auto r = rref(a);
      for (std::size_t k = 0; k < r.rank; ++k) {
        CHECK(r.reduced(k, r.pivots[k]) == 1);
        for (std::size_t i = 0; i < 4; ++i)
          if (i != k) CHECK(r.reduced(i, r.pivots[k]) == 0);
      }
      // same row space: stacking does not raise rank
      CHECK(rank(vstack({a, r.reduced})) == r.rank);
    }
  }

  TEST_CASE("kernel examples") {
    auto f2 = Field::get(2, 1);
    CHECK(kernel_vectors(Mat::identity(f2, 3)).empty());
    auto k = kernel_vectors(M(f2, {{0, 1}, {0, 0}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vec{1, 0});
    // hand RREF: x0 = x2, x1 = x2 + x3 -> basis (1,1,1,0), (0,1,0,1)
    auto k2 = kernel_vectors(M(f2, {{1, 0, 1, 0}, {0, 1, 1, 1}}));
    REQUIRE(k2.size() == 2);
    CHECK(k2[0] == Vec{1, 1, 1, 0});
    CHECK(k2[1] == Vec{0, 1, 0, 1});
  }

  TEST_CASE("solve examples") {
    auto f3 = Field::get(3, 1);
    Vec b{2, 0, 1};
    CHECK(solve(Mat::identity(f3, 3), b) == b);
    CHECK(!solve(Mat(f3, 3, 3), b).has_value());
    auto x = solve(M(f3, {{1, 1}, {1, 2}}), Vec{0, 1});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{2, 1});
  }

  TEST_CASE("jordan examples") {
    auto f2 = Field::get(2, 1);
    CHECK(unipotent_jordan(Mat::identity(f2, 4)) == std::vector<std::size_t>{1, 1, 1, 1});
    for (auto f : {Field::get(2, 1), Field::get(3, 1), Field::get(3, 2), Field::get(5, 1)})
      CHECK(unipotent_jordan(M(f, {{1, 1}, {0, 1}})) == std::vector<std::size_t>{2});
    Mat s2 = sym_power_matrix(M(f2, {{1, 1}, {0, 1}}), 2);
    CHECK(unipotent_jordan(s2) == std::vector<std::size_t>{2, 1});
    CHECK_THROWS(unipotent_jordan(M(f2, {{0, 1}, {1, 1}})));
  }

  TEST_CASE("mat_mul and mat_pow examples") {
    auto f2 = Field::get(2, 1), f3 = Field::get(3, 1);
    Mat a = M(f3, {{1, 2, 0}, {0, 1, 1}});
    CHECK(a * Mat::identity(f3, 3) == a);
    CHECK(mat_pow(M(f2, {{1, 1}, {0, 1}}), 2).is_identity());
    CHECK(mat_pow(M(f3, {{1, 1}, {0, 1}}), 3).is_identity());
    CHECK_THROWS(a * a);
  }

  TEST_CASE("rank of transpose equals rank") {
    Rng rng(17);
    for (auto f : {Field::get(2, 1), Field::get(3, 1), Field::get(2, 2), Field::get(5, 1)}) {
      for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + uniform_below(rng, 9), c = 1 + uniform_below(rng, 9);
        Mat a = random_mat(f, r, c, rng);
        // make rank deficiency common
        if (t % 2) {
          std::size_t k = 1 + uniform_below(rng, 3);
          a = random_mat(f, r, k, rng) * random_mat(f, k, c, rng);
        }
        CHECK(rank(a) == rank(transpose(a)));
      }
    }
  }

  TEST_CASE("kernel vectors satisfy Mv = 0 with count cols - rank") {
    Rng rng(19);
    for (auto f : {Field::get(2, 1), Field::get(3, 1), Field::get(2, 2), Field::get(5, 1), Field::get(3, 2)}) {
      for (int t = 0; t < 100; ++t) {
        std::size_t r = 1 + uniform_below(rng, 8), c = 1 + uniform_below(rng, 8);
        Mat a = random_mat(f, r, 2, rng) * random_mat(f, 2, c, rng);
        auto ks = kernel_vectors(a);
        CHECK(ks.size() == c - rank(a));
        for (const auto& v : ks) {
          auto w = a * v;
          CHECK(std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; }));
        }
      }
    }
  }

  TEST_CASE("jordan partition is conjugation invariant") {
    Rng rng(23);
    for (auto f : {Field::get(2, 1), Field::get(3, 1), Field::get(5, 1), Field::get(2, 2)}) {
      for (std::size_t n = 0; n <= 12; ++n) {
        Mat u = sym_power_matrix(Mat::from_rows(f, {{1, 1}, {0, 1}}), n);
        Mat p = random_invertible(f, u.rows(), rng);
        CHECK(unipotent_jordan(p * u * inverse(p)) == unipotent_jordan(u));
      }
    }
  }

  TEST_CASE("inverse and subspaces") {
    Rng rng(29);
    auto f = Field::get(3, 2);
    for (int t = 0; t < 20; ++t) {
      Mat a = random_invertible(f, 5, rng);
      CHECK((a * inverse(a)).is_identity());
      Mat b = random_mat(f, 6, 2, rng) * random_mat(f, 2, 4, rng);
      Subspace cs = column_space(b);
      CHECK(cs.dim() == rank(b));
      CHECK(rank(hstack({cs.basis, b})) == cs.dim());
      for (std::size_t k = 0; k < cs.dim(); ++k)
        for (std::size_t j = 0; j < cs.dim(); ++j) CHECK(cs.basis(cs.pivot_rows[j], k) == (j == k ? 1u : 0u));
    }
    CHECK_THROWS(inverse(Mat(f, 2, 2)));
  }

  TEST_CASE("matrix text format") {
    auto f4 = Field::get(2, 2);
    Mat a = Mat::from_rows(f4, {{0, 1, 2}, {3, 2, 1}});
    std::string s = to_text(a);
    CHECK(s == "2 3\n00 10 01\n11 01 10\n");
    CHECK(from_text(f4, s) == a);
    CHECK_THROWS(from_text(f4, "2 2\n00 10\n"));
    CHECK_THROWS(from_text(f4, "1 2\n00 10 11\n"));
  }
}
