#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "symrep/characters.hpp"
#include "symrep/group.hpp"

namespace symrep {

using ClassId = std::uint32_t;
// Multiset of indecomposable classes. decompose() only produces positive
// multiplicities; signed vectors are used for Euler-type sums.
using DecompVector = std::map<ClassId, std::int64_t>;

DecompVector dv_add(const DecompVector& a, const DecompVector& b);
DecompVector dv_sub(const DecompVector& a, const DecompVector& b);
DecompVector dv_scale(const DecompVector& a, std::int64_t k);
std::string dv_to_string(const DecompVector& v);

// Spanning data for a module: basis vectors w_l = rho(h_l) v_{gen_of[l]}
// obtained by spinning standard basis vectors, plus the linear relations
// rho(g) w_l = sum_k coeffs_k w_k that close the span.
struct SpinData {
  struct Relation {
    std::size_t source;
    std::size_t gen;
    Vec coeffs;
  };
  std::size_t num_generators = 0;
  std::vector<std::size_t> gen_of;
  std::vector<std::size_t> elem_of;
  std::vector<Relation> relations;
  Mat basis_inverse;  // inverse of the matrix with columns w_l
};

SpinData spin(const ModuleRep& m);

// Basis of Hom_kG(M, N) as dim(N) x dim(M) matrices.
std::vector<Mat> hom_basis(const ModuleRep& M, const ModuleRep& N);

struct Fingerprint {
  std::size_t dim = 0;
  BrauerChar chr;
  std::vector<std::vector<std::size_t>> sylow_jordan;
  std::size_t fixed_dim = 0, cofixed_dim = 0;
  std::string bytes() const;
};

Fingerprint fingerprint(const ModuleRep& m);

struct IsoReport {
  bool iso = false;
  bool probable = false;  // "probably not isomorphic": sampling failed, space too big to exhaust
};

IsoReport is_iso_report(const ModuleRep& M, const ModuleRep& N, std::uint64_t seed = 0);
bool is_iso(const ModuleRep& M, const ModuleRep& N, std::uint64_t seed = 0);

struct FittingOptions {
  int trials = 24;
  std::size_t max_dim = kDefaultMaxDim;
};

std::vector<ModuleRep> fitting_decompose(const ModuleRep& m, std::uint64_t seed, const FittingOptions& opt = {});

struct RegistryEntry {
  ModuleRep rep;
  Fingerprint fp;
  std::string fp_bytes;
  bool projective = false;
};

class Registry {
 public:
  explicit Registry(GroupPtr g);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const;
  const RegistryEntry& entry(ClassId id) const;
  std::vector<ClassId> ids() const;
  // Deterministic lookup for an indecomposable module.
  std::optional<ClassId> find(const ModuleRep& indecomposable) const;
  ClassId insert(const ModuleRep& indecomposable);
  // Insert without an isomorphism check (cache reload).
  ClassId insert_unchecked(const ModuleRep& indecomposable);

  std::optional<DecompVector> regular_vector() const;
  void set_regular_vector(DecompVector v);

 private:
  GroupPtr group_;
  mutable std::shared_mutex mu_;
  std::deque<RegistryEntry> entries_;
  std::multimap<std::string, ClassId> by_fp_;
  std::optional<DecompVector> regular_;
};

struct DecomposeOptions {
  enum class Strategy { automatic, fitting };
  Strategy strategy = Strategy::automatic;
  FittingOptions fitting;
};

// Decomposition against a fixed registry. Summands not isomorphic to any
// registered class are returned separately, grouped by isomorphism type.
struct LocalDecomposition {
  DecompVector known;
  std::vector<std::pair<ModuleRep, std::int64_t>> novel;
};

LocalDecomposition decompose_local(const ModuleRep& m, const Registry& reg, std::uint64_t seed,
                                   const DecomposeOptions& opt = {});
// Registers novel classes (in canonical order) and returns the full vector.
DecompVector merge_local(Registry& reg, LocalDecomposition d);
DecompVector decompose(const ModuleRep& m, Registry& reg, std::uint64_t seed, const DecomposeOptions& opt = {});

// Number of copies of the indecomposable T that split off M.
std::int64_t summand_multiplicity(const ModuleRep& T, const ModuleRep& M);

// Cyclic p-groups: the module on which a generator of maximal order acts by
// a single Jordan block of size b, and the vector of a Jordan partition.
ModuleRep jordan_block_module(const GroupPtr& g, std::size_t b);
DecompVector from_jordan_type(Registry& reg, const std::vector<std::size_t>& partition);

std::size_t projective_part_dim(const ModuleRep& m);
bool is_projective_indecomposable(const ModuleRep& m);

struct ProjectiveSplit {
  DecompVector projective, nonprojective;
};
ProjectiveSplit split_projective(const DecompVector& v, const Registry& reg);

// Decomposes the regular representation and records its vector.
DecompVector register_regular(Registry& reg, std::uint64_t seed);
std::int64_t free_rank(const DecompVector& v, const Registry& reg);
DecompVector nonfree(const DecompVector& v, const Registry& reg);
std::size_t dv_dim(const DecompVector& v, const Registry& reg);

GroupPtr extend_group(const GroupPtr& g, std::uint32_t s);
ModuleRep extend_scalars(const ModuleRep& m, std::uint32_t s);

}  // namespace symrep
