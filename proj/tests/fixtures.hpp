#pragma once

#include <vector>

#include "symrep/group.hpp"

namespace symrep::fixtures {

inline Mat mat(FieldPtr f, std::vector<std::vector<Elem>> rows) { return Mat::from_rows(f, rows); }

inline GroupPtr group(FieldPtr f, std::vector<Mat> gens) { return close_group(Representation::make(f, std::move(gens))); }

// C_p = <J_2> over GF(p), acting on P^1
inline GroupPtr cyclic_unipotent(std::uint32_t p) {
  auto f = Field::get(p, 1);
  return group(f, {mat(f, {{1, 1}, {0, 1}})});
}

// S_3 = GL_2(GF(2))
inline GroupPtr gl2_f2() {
  auto f = Field::get(2, 1);
  return group(f, {mat(f, {{0, 1}, {1, 0}}), mat(f, {{1, 1}, {0, 1}})});
}

// C_3 over GF(2), semisimple
inline GroupPtr cyclic3_f2() {
  auto f = Field::get(2, 1);
  return group(f, {mat(f, {{0, 1}, {1, 1}})});
}

// Klein four over GF(4): x -> [[1,1],[0,1]], y -> [[1,w],[0,1]]
inline GroupPtr klein_four() {
  auto f = Field::get(2, 2);
  return group(f, {mat(f, {{1, 1}, {0, 1}}), mat(f, {{1, 2}, {0, 1}})});
}

// rho_c as a module for klein_four()
inline ModuleRep rho(const GroupPtr& g, Elem c) {
  auto f = g->field();
  return ModuleRep(g, {mat(f, {{1, 1}, {0, 1}}), mat(f, {{1, c}, {0, 1}})});
}

// C_2 x C_2 over GF(2), faithful 3-dim unipotent
inline GroupPtr c2xc2_f2() {
  auto f = Field::get(2, 1);
  return group(f, {mat(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), mat(f, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})});
}

// C_2 on P^2 over GF(4): diag(J_2, 1)
inline GroupPtr c2_p2_f4() {
  auto f = Field::get(2, 2);
  return group(f, {mat(f, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})});
}

// C_3 on P^3 over GF(9): J_3 + J_1
inline GroupPtr c3_p3_f9() {
  auto f = Field::get(3, 2);
  return group(f, {mat(f, {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})});
}

inline GroupPtr trivial_group(FieldPtr f, std::size_t dim) { return group(f, {Mat::identity(f, dim)}); }

inline std::vector<GroupPtr> all_fixture_groups() {
  return {cyclic_unipotent(2), cyclic_unipotent(3), cyclic_unipotent(5), gl2_f2(), cyclic3_f2(),
          klein_four(),        c2xc2_f2(),          c2_p2_f4(),          c3_p3_f9()};
}

}  // namespace symrep::fixtures
