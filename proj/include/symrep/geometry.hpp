#pragma once

#include <cstdint>
#include <vector>

#include "symrep/group.hpp"

namespace symrep {

// Projectivized eigenspace of a group element acting on P^d.
struct FixedComponent {
  std::uint64_t exponent = 0;  // eigenvalue zeta_N^exponent, N from splitting_data
  int dim = -1;                // projective dimension
};

struct ElementFix {
  std::size_t index = 0;
  std::uint64_t order = 1;
  std::vector<FixedComponent> fixed;
  int max_dim = -1;  // -1: no fixed points
};

struct RamificationReport {
  int d = 0;
  std::uint64_t N = 1;
  std::vector<ElementFix> elements;  // nonidentity elements
  int dimB = -1, dimBp = -1;         // -1: empty
  int c = -1, cp = -1;
  bool generically_free = false;
  bool faithful_on_P = false;
};

std::vector<FixedComponent> fixed_dims(const GroupPtr& g, std::size_t element);
// Throws if some nonidentity element acts as a scalar.
RamificationReport ramification(const GroupPtr& g);

}  // namespace symrep
