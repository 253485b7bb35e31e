#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrep/group.hpp"

namespace symrep {

// Brauer character as eigenvalue multiplicities: values[c][j] is the
// multiplicity of zeta_N^j as an eigenvalue of the class representative
// classes[c], zeta_N a fixed primitive N-th root of unity.
struct BrauerChar {
  std::uint64_t N = 1;
  std::vector<std::size_t> classes;
  std::vector<std::vector<std::int64_t>> values;

  bool operator==(const BrauerChar& o) const { return N == o.N && classes == o.classes && values == o.values; }
  bool operator!=(const BrauerChar& o) const { return !(*this == o); }
  bool is_zero() const;
  // Values as cyclotomic integers: coordinates in Z[x]/Phi_N, length phi(N).
  std::vector<std::vector<std::int64_t>> reduced() const;
  std::string bytes() const;
};

// Shared data for eigenvalue probes over the splitting field.
struct SplittingData {
  std::uint64_t N = 1;  // lcm of p-regular element orders
  std::uint32_t s = 1;  // extension degree over the base field
  std::shared_ptr<const Embedding> embedding;
  Elem zeta = 1;  // primitive N-th root in the extension
};

SplittingData splitting_data(const GroupData& g);
// For lcm n of a set of orders coprime to p.
SplittingData splitting_data_for(const FieldPtr& f, std::uint64_t n);

BrauerChar brauer_char(const ModuleRep& m);
BrauerChar brauer_char_of(const GroupData& g, const std::vector<const Mat*>& class_mats, std::size_t dim);

BrauerChar char_add(const BrauerChar& a, const BrauerChar& b);
BrauerChar char_sub(const BrauerChar& a, const BrauerChar& b);
BrauerChar char_scale(const BrauerChar& a, std::int64_t k);

std::vector<std::int64_t> cyclotomic_poly(std::uint64_t n);

std::vector<std::int64_t> delta_seq(const std::vector<std::int64_t>& f, std::size_t k);
std::vector<BrauerChar> delta_seq(const std::vector<BrauerChar>& f, std::size_t k);

// Brauer characters of Sym^n for n = 0..max_degree.
std::vector<BrauerChar> sym_characters(const GroupPtr& g, std::size_t max_degree);

struct DeltaReport {
  std::size_t j = 0, m = 1, k = 1, n_max = 0;
  std::optional<std::size_t> vanishes_from;
  std::size_t window = 0;  // number of Delta^k values examined
};

// Least n0 with Delta^k f(n) = 0 for every n >= n0 in the window, confirmed
// by at least `confirm` zero values.
DeltaReport check_delta_vanishing(const GroupPtr& g, std::size_t j, std::size_t m, std::size_t k, std::size_t n_max,
                                  std::size_t confirm = 3);
DeltaReport check_delta_vanishing_seq(const std::vector<BrauerChar>& chars_by_degree, std::size_t j, std::size_t m,
                                      std::size_t k, std::size_t n_max, std::size_t confirm = 3);

struct CharGrowthReport {
  std::size_t element = 0, a = 0, stride = 1;
  int d_fix = 0;
  std::size_t order = 1;  // differences of this order tested (d_fix + 1)
  std::optional<std::size_t> vanishes_from;
  bool ok = false;
};

// Values r -> Phi(Sym^{a + r*#G})(g) in reduced coordinates: differences of
// order d_fix+1 must vanish eventually.
CharGrowthReport char_growth_check(const GroupPtr& g, std::size_t element, std::size_t a, int d_fix,
                                   std::size_t r_max, std::size_t confirm = 3);
CharGrowthReport char_growth_check_seq(const GroupData& g, const std::vector<BrauerChar>& chars_by_degree,
                                       std::size_t element, std::size_t a, int d_fix, std::size_t r_max,
                                       std::size_t confirm = 3);

}  // namespace symrep
