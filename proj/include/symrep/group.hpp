#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "symrep/matrix.hpp"

namespace symrep {

constexpr std::size_t kDefaultGroupCap = 10000;
constexpr std::size_t kDefaultMaxDim = 50000;

struct Representation {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<std::string> names;
  std::vector<Mat> gens;

  static Representation make(FieldPtr f, std::vector<Mat> gens, std::vector<std::string> names = {});
};

// Enumerated finite matrix group. Elements are in BFS order from the
// generators (each layer sorted by serialized bytes), identity first.
struct GroupData {
  Representation rep;
  std::vector<Mat> elements;
  std::vector<std::size_t> parent;   // elements[i] = elements[parent[i]] * gens[via_gen[i]]
  std::vector<std::size_t> via_gen;
  std::vector<std::size_t> gen_index;  // element index of each generator
  std::vector<std::uint64_t> element_orders;
  std::vector<std::size_t> inverse;
  std::uint64_t order = 0;
  std::uint64_t p_part = 1;
  std::vector<std::size_t> sylow;       // sorted element indices
  std::vector<std::size_t> sylow_gens;  // element indices generating sylow
  std::vector<std::size_t> p_regular_class_reps;
  std::vector<std::size_t> class_of;  // conjugacy class id for every element

  std::uint32_t p() const { return rep.field->p(); }
  const FieldPtr& field() const { return rep.field; }
  std::size_t index_of(const Mat& m) const;  // throws if absent
  std::size_t mul(std::size_t a, std::size_t b) const;
  bool is_p_element(std::size_t i) const;
  bool is_p_regular(std::size_t i) const;
  // Hash of the element list, used in cache keys.
  std::string element_hash_bytes() const;
  // Subgroup generated by the given element indices (sorted indices).
  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const;
  bool is_subgroup(const std::vector<std::size_t>& h) const;
  bool is_cyclic_p_group() const;

  std::unordered_map<std::string, std::size_t> index;
  mutable std::vector<std::vector<std::size_t>> mul_table;  // filled when order is small
};

using GroupPtr = std::shared_ptr<const GroupData>;

GroupPtr close_group(const Representation& rep, std::size_t cap = kDefaultGroupCap);
std::vector<std::size_t> sylow_p(const GroupData& g);
bool same_group(const GroupData& a, const GroupData& b);

// kG-module given by the action of each group generator.
class ModuleRep {
 public:
  ModuleRep() = default;
  // validate: check relations of the element list (full check for small
  // modules, sampled otherwise).
  ModuleRep(GroupPtr g, std::vector<Mat> action, bool validate = true);
  ModuleRep(GroupPtr g, std::vector<Mat> action, std::vector<Mat> element_actions);

  const GroupPtr& group() const { return group_; }
  const FieldPtr& field() const { return group_->rep.field; }
  std::size_t dim() const { return dim_; }
  const std::vector<Mat>& action() const { return action_; }
  // Action of every group element (computed on first use).
  const std::vector<Mat>& element_actions() const;
  const Mat& act(std::size_t element) const { return element_actions()[element]; }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Mat> mats;
  };
  GroupPtr group_;
  std::size_t dim_ = 0;
  std::vector<Mat> action_;
  std::shared_ptr<Cache> cache_;
};

ModuleRep trivial_module(const GroupPtr& g, std::size_t dim = 1);
ModuleRep natural_module(const GroupPtr& g);
ModuleRep regular_rep(const GroupPtr& g);
ModuleRep restrict_module(const ModuleRep& m, const std::vector<std::size_t>& subgroup);
ModuleRep dual(const ModuleRep& m);
ModuleRep direct_sum(const std::vector<ModuleRep>& parts);
ModuleRep conjugate(const ModuleRep& m, const Mat& p);  // p rho p^-1
ModuleRep submodule(const ModuleRep& m, const Subspace& s);
ModuleRep quotient_module(const ModuleRep& m, const Subspace& s);
Mat trace_operator(const ModuleRep& m, const std::vector<std::size_t>& subgroup);
// Random module of the given dimension: conjugate of a random direct sum of
// small building blocks (submodules/quotients of regular and natural modules).
ModuleRep random_module(const GroupPtr& g, std::size_t max_dim, Rng& rng);

// Graded-lex monomial basis of degree n in v variables, z0 > z1 > ...
class MonomialBasis {
 public:
  MonomialBasis(std::size_t vars, std::size_t degree);
  std::size_t size() const { return count_; }
  std::size_t vars() const { return vars_; }
  std::size_t degree() const { return degree_; }
  const std::vector<std::uint16_t>& exponents(std::size_t idx) const { return mons_[idx]; }
  std::size_t index_of(const std::uint16_t* exps) const;
  static std::uint64_t count(std::size_t vars, std::size_t degree);

 private:
  std::size_t vars_, degree_, count_;
  std::vector<std::vector<std::uint16_t>> mons_;
};

// Successive symmetric powers of the defining representation, for all group
// elements at once.
class SymPowerTower {
 public:
  explicit SymPowerTower(GroupPtr g, std::size_t max_dim = kDefaultMaxDim);
  std::size_t degree() const { return n_; }
  // Advance to degree n+1.
  void step();
  void advance_to(std::size_t n);
  ModuleRep module() const;
  const std::vector<Mat>& element_mats() const { return mats_; }

 private:
  GroupPtr g_;
  std::size_t max_dim_;
  std::size_t n_ = 0;
  std::vector<Mat> mats_;
};

ModuleRep sym_power(const GroupPtr& g, std::size_t n, std::size_t max_dim = kDefaultMaxDim);
// Sym^n of a single matrix.
Mat sym_power_matrix(const Mat& g, std::size_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace symrep
