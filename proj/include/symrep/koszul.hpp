#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symrep/decomp.hpp"

namespace symrep {

// Homogeneous form: coefficients over MonomialBasis(vars, degree).
struct Form {
  std::size_t degree = 0;
  Vec coeffs;
};

Form form_mul(const Form& a, const Form& b, const Field& F, std::size_t vars);
Form act_on_form(const Mat& g, const Form& f);
bool is_invariant(const GroupData& g, const Form& f);
// Product of the translates g.r over all group elements.
Form norm_form(const GroupData& g, const Vec& linear);

// Column-sparse matrix.
struct SparseCols {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Elem>>> col;
  Mat dense(const FieldPtr& f) const;
};

// Multiplication by N from Sym^src to Sym^(src + deg N).
SparseCols multiplication_map(const Form& N, std::size_t vars, std::size_t src_degree, const Field& F);

// Symmetric powers and their decompositions, computed on demand.
class SymContext {
 public:
  SymContext(GroupPtr g, Registry& reg, std::uint64_t seed, std::size_t max_dim = kDefaultMaxDim);
  const GroupPtr& group() const { return g_; }
  Registry& registry() { return reg_; }
  std::uint64_t seed() const { return seed_; }
  const ModuleRep& module(std::size_t n);
  const DecompVector& decomposition(std::size_t n);
  // Seed with a decomposition computed elsewhere against the same registry.
  void set_decomposition(std::size_t n, DecompVector v) { decs_[n] = std::move(v); }
  void clear_modules() { mods_.clear(); }

 private:
  GroupPtr g_;
  Registry& reg_;
  std::uint64_t seed_;
  std::size_t max_dim_;
  std::map<std::size_t, ModuleRep> mods_;
  std::map<std::size_t, DecompVector> decs_;
};

struct KoszulComplex {
  std::size_t d = 0, m = 0, j = 0, t = 0;
  std::vector<Form> forms;
  std::vector<std::optional<std::size_t>> degree;  // Sym degree of the blocks of C_r
  std::vector<std::size_t> dims;                   // dim C_r, r = 0..d
  std::vector<SparseCols> tau_sparse;              // tau_r : C_r -> C_{r-1}, r = 1..d (slot 0 unused)
  std::vector<Mat> tau;
  mutable std::vector<std::optional<std::size_t>> rank_cache;
  std::size_t tau_rank(std::size_t r) const;  // 0 for r = 0 or r > d
};

struct FormChoice {
  std::vector<Form> forms;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
};

// d invariant forms of degree m = m2^2 #G (m2 the p'-part of #G; m = #G for
// p-groups), each a power of the norm of a random linear form. Verified: invariance, exactness at t = d
// with cokernel of dimension m^d, free cokernel.
FormChoice choose_forms(SymContext& ctx, std::uint64_t seed);

KoszulComplex build_complex(SymContext& ctx, const std::vector<Form>& forms, std::size_t t, std::size_t j);
ModuleRep complex_term(SymContext& ctx, const KoszulComplex& K, std::size_t r);
ModuleRep cokernel_module(SymContext& ctx, const KoszulComplex& K);

struct ExactReport {
  std::vector<std::size_t> ranks;  // rank tau_r, r = 1..d
  std::vector<bool> exact_at;      // r = 1..d
  std::size_t coker_dim = 0, expected_coker = 0;
  bool exact = false, coker_ok = false;
  bool ok() const { return exact && coker_ok; }
};

ExactReport check_exact(const KoszulComplex& K);

// Krull-Schmidt criterion: sub is a direct summand of C iff
// [C] = [sub] + [C/sub].
bool ks_split(const ModuleRep& C, const Subspace& sub, Registry& reg, std::uint64_t seed);

struct StageVerdict {
  std::size_t r = 0;
  bool split = false;
  DecompVector term, kernel, quotient;
};

struct SplitReport {
  std::vector<StageVerdict> stages;
  bool all_split = false;
  DecompVector Q;
  bool Q_free = false;
  std::int64_t Q_free_rank = 0;
  bool fast_path = false;
  std::string error;
};

// Splitting of every short exact sequence 0 -> ker tau_r -> C_r -> C_r/ker -> 0
// by the Krull-Schmidt criterion. For cyclic p-groups the Jordan types are
// read off ranks of tau_r (sigma - 1)^k unless allow_fast is false.
SplitReport check_split_stagewise(SymContext& ctx, const KoszulComplex& K, bool allow_fast = true);

struct EulerReport {
  DecompVector signed_class;
  std::optional<std::int64_t> q;
  bool consistent = false;
};

// Terms of negative degree are zero, so any t >= 1 is allowed.
EulerReport euler_identity(SymContext& ctx, std::size_t m, std::size_t j, std::size_t t,
                           std::optional<std::size_t> coker_dim = std::nullopt);

struct ProgressionReport {
  std::size_t m = 0, j = 0, t0 = 0;
  std::vector<DecompVector> nonfree_parts, diffs;
  std::optional<std::size_t> threshold;  // t from which differences are constant
  DecompVector constant;
  bool ok = false;
};

ProgressionReport surface_progression_check(SymContext& ctx, std::size_t m, std::size_t j, std::size_t t0,
                                            std::size_t t1, std::size_t confirm = 3);

// Least t <= t_limit at which check_exact passes for every j.
std::optional<std::size_t> find_mu0(SymContext& ctx, const std::vector<Form>& forms, std::size_t t_limit);

}  // namespace symrep
