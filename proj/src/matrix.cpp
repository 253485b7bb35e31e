#include "symrep/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace symrep {

namespace {

void require_same_field(const Mat& a, const Mat& b, const char* what) {
  if (a.field() != b.field() && !(a.field() && b.field() && a.F().spec() == b.F().spec()))
    throw std::invalid_argument(std::string(what) + ": field mismatch");
}

}  // namespace

Mat::Mat(FieldPtr f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat Mat::identity(FieldPtr f, std::size_t n) {
  Mat m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j] >= f->q()) throw std::invalid_argument("from_rows: entry out of range");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Mat Mat::from_cols(FieldPtr f, std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(std::move(f), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_cols: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string Mat::bytes() const {
  std::string out;
  out.reserve(16 + data_.size() * 2);
  auto put = [&](std::uint64_t v, int n) {
    for (int k = n - 1; k >= 0; --k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  };
  put(rows_, 4);
  put(cols_, 4);
  const int width = field_ && field_->q() > 65536 ? 4 : (field_ && field_->q() > 256 ? 2 : 1);
  for (Elem x : data_) put(x, width);
  return out;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  require_same_field(a, b, "mat_mul");
  Mat c(a.field(), a.rows(), b.cols());
  const Field& F = a.F();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Elem* ar = a.row(i);
    Elem* cr = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (ar[k]) F.axpy(cr, ar[k], b.row(k), n);
  }
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  const Field& F = a.F();
  Vec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Elem* r = a.row(i);
    Elem acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (r[j] && v[j]) acc = F.add(acc, F.mul(r[j], v[j]));
    out[i] = acc;
  }
  return out;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("mat_add: dimension mismatch");
  require_same_field(a, b, "mat_add");
  Mat c = a;
  a.F().axpy(c.data().data(), 1, b.data().data(), c.data().size());
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("mat_sub: dimension mismatch");
  require_same_field(a, b, "mat_sub");
  Mat c = a;
  a.F().axpy(c.data().data(), a.F().neg(1), b.data().data(), c.data().size());
  return c;
}

Mat scalar_mul(Elem s, const Mat& a) {
  Mat c = a;
  a.F().scale(c.data().data(), s, c.data().size());
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Mat mat_pow(const Mat& a, std::uint64_t k) {
  if (a.rows() != a.cols()) throw std::invalid_argument("mat_pow: non-square");
  Mat r = Mat::identity(a.field(), a.rows());
  Mat base = a;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: non-square");
  const std::size_t n = a.rows();
  Mat aug = hstack({a, Mat::identity(a.field(), n)});
  std::vector<std::size_t> piv;
  echelonize(aug, true, &piv);
  if (piv.size() < n || (n && piv[n - 1] != n - 1)) throw std::domain_error("inverse: singular matrix");
  Mat inv(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) std::copy(aug.row(i) + n, aug.row(i) + 2 * n, inv.row(i));
  return inv;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag: no blocks");
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat m(blocks[0].field(), r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) std::copy(b.row(i), b.row(i) + b.cols(), m.row(r0 + i) + c0);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

Mat hstack(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("hstack: no blocks");
  std::size_t c = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw std::invalid_argument("hstack: row mismatch");
    c += b.cols();
  }
  Mat m(blocks[0].field(), blocks[0].rows(), c);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) std::copy(b.row(i), b.row(i) + b.cols(), m.row(i) + c0);
    c0 += b.cols();
  }
  return m;
}

Mat vstack(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("vstack: no blocks");
  std::size_t r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw std::invalid_argument("vstack: column mismatch");
    r += b.rows();
  }
  Mat m(blocks[0].field(), r, blocks[0].cols());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    std::copy(b.data().begin(), b.data().end(), m.data().begin() + off);
    off += b.data().size();
  }
  return m;
}

Mat submatrix(const Mat& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Mat m(a.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Elem* src = a.row(rows[i]);
    Elem* dst = m.row(i);
    for (std::size_t j = 0; j < cols.size(); ++j) dst[j] = src[cols[j]];
  }
  return m;
}

Mat random_mat(FieldPtr f, std::size_t rows, std::size_t cols, Rng& rng) {
  Mat m(f, rows, cols);
  for (auto& x : m.data()) x = static_cast<Elem>(uniform_below(rng, f->q()));
  return m;
}

Mat random_invertible(FieldPtr f, std::size_t n, Rng& rng) {
  for (;;) {
    Mat m = random_mat(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

std::size_t echelonize(Mat& m, bool reduced, std::vector<std::size_t>* pivots) {
  const Field& F = m.F();
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < C && r < R; ++col) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (m(i, col)) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != r) std::swap_ranges(m.row(piv) + col, m.row(piv) + C, m.row(r) + col);
    Elem* pr = m.row(r);
    F.scale(pr + col, F.inv(pr[col]), C - col);
    const std::size_t start = reduced ? 0 : r + 1;
    for (std::size_t i = start; i < R; ++i) {
      if (i == r) continue;
      Elem c = m(i, col);
      if (c) F.axpy(m.row(i) + col, F.neg(c), pr + col, C - col);
    }
    if (pivots) pivots->push_back(col);
    ++r;
  }
  return r;
}

RrefResult rref(Mat m) {
  RrefResult out;
  out.rank = echelonize(m, true, &out.pivots);
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter dimension.
  Mat w = m.rows() <= m.cols() ? m : transpose(m);
  return echelonize(w, false);
}

Mat kernel_basis(const Mat& m) { return null_space(m).basis; }

std::vector<Vec> kernel_vectors(const Mat& m) {
  Mat k = kernel_basis(m);
  std::vector<Vec> out;
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.column(j));
  return out;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Mat bm(a.field(), b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) bm(i, 0) = b[i];
  Mat aug = hstack({a, bm});
  std::vector<std::size_t> piv;
  echelonize(aug, true, &piv);
  const std::size_t n = a.cols();
  Vec x(n, 0);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == n) return std::nullopt;
    x[piv[k]] = aug(k, n);
  }
  return x;
}

bool is_invertible(const Mat& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

std::vector<std::size_t> nilpotent_jordan(const Mat& nil) {
  const std::size_t n = nil.rows();
  std::vector<std::size_t> ranks{n};
  Mat pw = nil;
  for (;;) {
    std::size_t r = rank(pw);
    if (r == ranks.back() && r != 0) throw std::domain_error("unipotent_jordan: matrix is not unipotent");
    ranks.push_back(r);
    if (r == 0) break;
    pw = pw * nil;
  }
  // ranks[k] = rank(N^k); blocks of size >= k: ranks[k-1] - ranks[k]
  std::vector<std::size_t> parts;
  const std::size_t K = ranks.size() - 1;
  for (std::size_t k = K; k >= 1; --k) {
    std::size_t ge_k = ranks[k - 1] - ranks[k];
    std::size_t ge_k1 = k + 1 <= K ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = 0; c < ge_k - ge_k1; ++c) parts.push_back(k);
  }
  return parts;
}

std::vector<std::size_t> unipotent_jordan(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unipotent_jordan: non-square");
  return nilpotent_jordan(m - Mat::identity(m.field(), m.rows()));
}

Subspace column_space(const Mat& m) {
  Mat t = transpose(m);
  std::vector<std::size_t> piv;
  std::size_t r = echelonize(t, true, &piv);
  Subspace s;
  s.pivot_rows = piv;
  s.basis = Mat(m.field(), m.rows(), r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) s.basis(i, k) = t(k, i);
  return s;
}

Subspace null_space(const Mat& m) {
  Mat w = m;
  std::vector<std::size_t> piv;
  std::size_t r = echelonize(w, true, &piv);
  const std::size_t n = m.cols();
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  Subspace s;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) s.pivot_rows.push_back(c);
  s.basis = Mat(m.field(), n, s.pivot_rows.size());
  const Field& F = m.F();
  for (std::size_t k = 0; k < s.pivot_rows.size(); ++k) {
    std::size_t f = s.pivot_rows[k];
    s.basis(f, k) = 1;
    for (std::size_t i = 0; i < r; ++i) s.basis(piv[i], k) = F.neg(w(i, f));
  }
  return s;
}

std::vector<std::size_t> complement_rows(const Subspace& s) {
  std::vector<char> in(s.ambient(), 0);
  for (auto r : s.pivot_rows) in[r] = 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.ambient(); ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

Mat restrict_to(const Mat& a, const Subspace& s) {
  Mat ab = a * s.basis;
  std::vector<std::size_t> all(s.dim());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return submatrix(ab, s.pivot_rows, all);
}

Mat quotient_action(const Mat& a, const Subspace& s) {
  auto comp = complement_rows(s);
  std::vector<std::size_t> all_rows(a.rows());
  for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
  Mat x = submatrix(a, all_rows, comp);          // n x c
  Mat top = submatrix(x, comp, std::vector<std::size_t>(all_rows.begin(), all_rows.begin() + comp.size()));
  if (s.dim() == 0) return top;
  std::vector<std::size_t> kc(s.dim());
  for (std::size_t k = 0; k < kc.size(); ++k) kc[k] = k;
  Mat bc = submatrix(s.basis, comp, kc);         // c x k
  std::vector<std::size_t> cc(comp.size());
  for (std::size_t k = 0; k < cc.size(); ++k) cc[k] = k;
  Mat xp = submatrix(x, s.pivot_rows, cc);       // k x c
  return top - bc * xp;
}

Mat embed(const Mat& m, const Embedding& e) {
  Mat out(e.to, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = e(m.data()[i]);
  return out;
}

std::string to_text(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.F().format(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

Mat from_text(FieldPtr f, const std::string& text) {
  std::istringstream is(text);
  long long r = -1, c = -1;
  if (!(is >> r >> c) || r < 0 || c < 0) throw std::invalid_argument("matrix text: bad header");
  Mat m(f, static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  std::string line;
  std::getline(is, line);  // rest of header
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!std::getline(is, line)) throw std::invalid_argument("matrix text: expected " + std::to_string(r) + " rows");
    std::istringstream ls(line);
    std::string tok;
    std::size_t j = 0;
    while (ls >> tok) {
      if (j >= m.cols()) throw std::invalid_argument("matrix text: row " + std::to_string(i) + " has too many entries");
      m(i, j++) = f->parse(tok);
    }
    if (j != m.cols()) throw std::invalid_argument("matrix text: row " + std::to_string(i) + " has too few entries");
  }
  std::string rest;
  if (is >> rest) throw std::invalid_argument("matrix text: trailing data");
  return m;
}

}  // namespace symrep
