#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symrep/field.hpp"
#include "symrep/rng.hpp"

namespace symrep {

using Vec = std::vector<Elem>;

// Dense row-major matrix over a finite field.
class Mat {
 public:
  Mat() = default;
  Mat(FieldPtr f, std::size_t rows, std::size_t cols);

  static Mat identity(FieldPtr f, std::size_t n);
  static Mat from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows);
  // Columns given as vectors of equal length.
  static Mat from_cols(FieldPtr f, std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }
  const Field& F() const { return *field_; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem* row(std::size_t i) { return data_.data() + i * cols_; }
  const Elem* row(std::size_t i) const { return data_.data() + i * cols_; }
  std::vector<Elem>& data() { return data_; }
  const std::vector<Elem>& data() const { return data_; }

  Vec column(std::size_t j) const;
  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  // Raw bytes used for hashing and canonical ordering.
  std::string bytes() const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> data_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat scalar_mul(Elem c, const Mat& a);
Mat transpose(const Mat& a);
Mat mat_pow(const Mat& a, std::uint64_t k);
Mat inverse(const Mat& a);  // throws if singular
Mat block_diag(const std::vector<Mat>& blocks);
Mat hstack(const std::vector<Mat>& blocks);
Mat vstack(const std::vector<Mat>& blocks);
Mat submatrix(const Mat& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);
Mat random_mat(FieldPtr f, std::size_t rows, std::size_t cols, Rng& rng);
Mat random_invertible(FieldPtr f, std::size_t n, Rng& rng);

struct RrefResult {
  Mat reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// In-place Gaussian elimination with first-nonzero pivoting. Returns rank and
// pivot columns. reduced=false leaves an upper echelon form.
std::size_t echelonize(Mat& m, bool reduced, std::vector<std::size_t>* pivots = nullptr);

RrefResult rref(Mat m);
std::size_t rank(const Mat& m);
// Canonical RREF-derived kernel basis, returned as the columns of a
// cols x (cols - rank) matrix.
Mat kernel_basis(const Mat& m);
std::vector<Vec> kernel_vectors(const Mat& m);
std::optional<Vec> solve(const Mat& a, const Vec& b);
bool is_invertible(const Mat& a);

// Block sizes, descending. Throws if m is not unipotent.
std::vector<std::size_t> unipotent_jordan(const Mat& m);
// Same computation from (m - I) when the caller already has it nilpotent.
std::vector<std::size_t> nilpotent_jordan(const Mat& n);

// Subspace with a column basis that is the identity on pivot_rows.
struct Subspace {
  Mat basis;                           // ambient x k
  std::vector<std::size_t> pivot_rows;  // size k, increasing
  std::size_t dim() const { return pivot_rows.size(); }
  std::size_t ambient() const { return basis.rows(); }
};

Subspace column_space(const Mat& m);
Subspace null_space(const Mat& m);
// Action of a on an a-invariant subspace, in the subspace basis.
Mat restrict_to(const Mat& a, const Subspace& s);
// Action of a on the quotient by an a-invariant subspace, in the basis of
// standard vectors outside pivot_rows.
Mat quotient_action(const Mat& a, const Subspace& s);
std::vector<std::size_t> complement_rows(const Subspace& s);

// Entry-wise image under a field embedding.
Mat embed(const Mat& m, const Embedding& e);

std::string to_text(const Mat& m);
Mat from_text(FieldPtr f, const std::string& text);

}  // namespace symrep
