#include "slbracket/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace slb {

// ---------------------------------------------------------------- Vec

Vec::Vec(Field f, int dim) : field_(std::move(f)) {
  if (dim < 1) throw error("vector dimension must be positive");
  v_.assign(dim, field_->zero());
}

Vec::Vec(Field f, std::vector<Scalar> entries) : field_(std::move(f)), v_(std::move(entries)) {
  if (v_.empty()) throw error("vector dimension must be positive");
  for (const auto& s : v_)
    if (!s.field()->same_field(*field_)) throw error("vector entry from foreign field");
}

Vec Vec::unit(const Field& f, int dim, int i) {
  Vec v(f, dim);
  v.at(i) = f->one();
  return v;
}

Scalar& Vec::at(int i) {
  if (i < 0 || i >= dim()) throw error("vector index out of range");
  return v_[i];
}

const Scalar& Vec::at(int i) const {
  if (i < 0 || i >= dim()) throw error("vector index out of range");
  return v_[i];
}

bool Vec::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec Vec::operator+(const Vec& o) const {
  if (dim() != o.dim()) throw error("vector dimension mismatch");
  Vec out = *this;
  for (int i = 0; i < dim(); ++i) out.v_[i] += o.v_[i];
  return out;
}

Vec Vec::operator-(const Vec& o) const {
  if (dim() != o.dim()) throw error("vector dimension mismatch");
  Vec out = *this;
  for (int i = 0; i < dim(); ++i) out.v_[i] -= o.v_[i];
  return out;
}

Vec Vec::scaled(const Scalar& c) const {
  Vec out = *this;
  for (auto& s : out.v_) s *= c;
  return out;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw error("comparing vectors of different dimension");
  return a.v_ == b.v_;
}

std::string Vec::str() const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    if (i) s += ' ';
    s += v_[i].str();
  }
  return s;
}

// ---------------------------------------------------------------- Mat

Mat::Mat(Field f, int n) : field_(std::move(f)), n_(n) {
  if (n < 1) throw error("matrix dimension must be positive");
  e_.assign(static_cast<std::size_t>(n) * n, field_->zero());
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::scalar(const Field& f, int n, const Scalar& c) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Mat Mat::unit(const Field& f, int n, int i, int j) {
  Mat m(f, n);
  m.at(i, j) = f->one();
  return m;
}

Mat Mat::jordan(const Field& f, int n) {
  Mat m(f, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = f->one();
  return m;
}

Mat Mat::diagonal(std::vector<Scalar> d) {
  if (d.empty()) throw error("empty diagonal");
  Mat m(d[0].field(), static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = d[i];
  return m;
}

Mat Mat::companion(const Poly& p) {
  if (!p.is_monic() || p.degree() < 1) throw error("companion matrix wants a monic polynomial of positive degree");
  int n = p.degree();
  Mat m(p.field(), n);
  for (int i = 0; i + 1 < n; ++i) m.at(i + 1, i) = p.field()->one();
  for (int i = 0; i < n; ++i) m.at(i, n - 1) = -p.coeff(i);
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  int n = static_cast<int>(rows.size());
  Mat m(f, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw error("ragged matrix rows");
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const Field& f, const std::vector<Vec>& cols) {
  int n = static_cast<int>(cols.size());
  Mat m(f, n);
  for (int j = 0; j < n; ++j) {
    if (cols[j].dim() != n) throw error("column dimension mismatch");
    for (int i = 0; i < n; ++i) m.at(i, j) = cols[j].at(i);
  }
  return m;
}

Scalar& Mat::at(int i, int j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw error("matrix index out of range");
  return e_[static_cast<std::size_t>(i) * n_ + j];
}

const Scalar& Mat::at(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw error("matrix index out of range");
  return e_[static_cast<std::size_t>(i) * n_ + j];
}

Scalar Mat::trace() const {
  Scalar t = field_->zero();
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

Mat Mat::transpose() const {
  Mat m(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Vec Mat::col(int j) const {
  Vec v(field_, n_);
  for (int i = 0; i < n_; ++i) v.at(i) = at(i, j);
  return v;
}

Vec Mat::row(int i) const {
  Vec v(field_, n_);
  for (int j = 0; j < n_; ++j) v.at(j) = at(i, j);
  return v;
}

Vec Mat::apply(const Vec& x) const {
  if (x.dim() != n_) throw error("dimension mismatch in matrix-vector product");
  Vec out(field_, n_);
  for (int i = 0; i < n_; ++i) {
    Scalar acc = field_->zero();
    for (int j = 0; j < n_; ++j) acc += at(i, j) * x.at(j);
    out.at(i) = acc;
  }
  return out;
}

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Mat::is_scalar() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j && at(i, i) != at(0, 0)) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

Mat Mat::operator+(const Mat& o) const {
  if (n_ != o.n_) throw error("matrix dimension mismatch");
  Mat m = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (n_ != o.n_) throw error("matrix dimension mismatch");
  Mat m = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] -= o.e_[i];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (n_ != o.n_) throw error("matrix dimension mismatch");
  Mat m(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < n_; ++j) m.at(i, j) += a * o.at(k, j);
    }
  return m;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& s : m.e_) s = -s;
  return m;
}

Mat Mat::scaled(const Scalar& c) const {
  Mat m = *this;
  for (auto& s : m.e_) s *= c;
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.n_ != b.n_) throw error("comparing matrices of different dimension");
  return a.e_ == b.e_;
}

bool operator<(const Mat& a, const Mat& b) {
  if (a.n_ != b.n_) throw error("comparing matrices of different dimension");
  for (std::size_t i = 0; i < a.e_.size(); ++i) {
    if (a.e_[i] < b.e_[i]) return true;
    if (b.e_[i] < a.e_[i]) return false;
  }
  return false;
}

std::string Mat::str() const {
  std::string s;
  for (int i = 0; i < n_; ++i) {
    if (i) s += '\n';
    for (int j = 0; j < n_; ++j) {
      if (j) s += ' ';
      s += at(i, j).str();
    }
  }
  return s;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Scalar trace_form(const Mat& a, const Mat& b) {
  if (a.dim() != b.dim()) throw error("matrix dimension mismatch");
  Scalar t = a.field()->zero();
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) t += a.at(i, k) * b.at(k, i);
  return t;
}

Mat mat_pow(const Mat& m, int k) {
  if (k < 0) throw error("negative matrix power");
  Mat acc = Mat::identity(m.field(), m.dim());
  for (int i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

Mat poly_at(const Poly& p, const Mat& m) {
  Mat acc = Mat::zero(m.field(), m.dim());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    Scalar c = p.coeff(i);
    for (int d = 0; d < m.dim(); ++d) acc.at(d, d) += c;
  }
  return acc;
}

// --------------------------------------------------- elimination engine

namespace {

// Rectangular scratch matrix for elimination.
struct Grid {
  Grid(const Field& f, int r, int c) : field(f), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, f->zero()) {}
  Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  Field field;
  int rows, cols;
  std::vector<Scalar> a;
};

// Reduced row echelon form with first-nonzero pivoting.  Returns the pivot
// column of each pivot row, in order.
std::vector<int> rref(Grid& g) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < g.cols && r < g.rows; ++c) {
    int pr = -1;
    for (int i = r; i < g.rows; ++i)
      if (!g.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < g.cols; ++j) std::swap(g.at(pr, j), g.at(r, j));
    Scalar inv = g.field->inv(g.at(r, c));
    for (int j = c; j < g.cols; ++j) g.at(r, j) *= inv;
    for (int i = 0; i < g.rows; ++i) {
      if (i == r || g.at(i, c).is_zero()) continue;
      Scalar f = g.at(i, c);
      for (int j = c; j < g.cols; ++j) g.at(i, j) -= f * g.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Solve g_core * x = rhs where the grid columns are the family members and
// one extra augmented column holds the target.  Free variables become zero.
std::optional<std::vector<Scalar>> solve_grid(Grid& g) {
  auto pivots = rref(g);
  int k = g.cols - 1;
  std::vector<Scalar> x(k, g.field->zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == k) return std::nullopt;  // pivot in the augmented column
    x[pivots[r]] = g.at(static_cast<int>(r), k);
  }
  return x;
}

std::vector<std::vector<Scalar>> kernel_grid(Grid& g) {
  auto pivots = rref(g);
  std::vector<bool> is_pivot(g.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < g.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(g.cols, g.field->zero());
    v[f] = g.field->one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -g.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Grid grid_from_cols_mat(std::span<const Mat> family, const Mat& target) {
  int n = target.dim();
  Grid g(target.field(), n * n, static_cast<int>(family.size()) + 1);
  for (std::size_t c = 0; c < family.size(); ++c) {
    if (family[c].dim() != n) throw error("family member dimension mismatch");
    if (!family[c].field()->same_field(*target.field())) throw error("family member from foreign field");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.at(i * n + j, static_cast<int>(c)) = family[c].at(i, j);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i * n + j, static_cast<int>(family.size())) = target.at(i, j);
  return g;
}

Grid grid_from_cols_vec(std::span<const Vec> family, const Vec& target) {
  int n = target.dim();
  Grid g(target.field(), n, static_cast<int>(family.size()) + 1);
  for (std::size_t c = 0; c < family.size(); ++c) {
    if (family[c].dim() != n) throw error("family member dimension mismatch");
    for (int i = 0; i < n; ++i) g.at(i, static_cast<int>(c)) = family[c].at(i);
  }
  for (int i = 0; i < n; ++i) g.at(i, static_cast<int>(family.size())) = target.at(i);
  return g;
}

// Coefficient matrix of X |-> MX - XM acting on row-major flattened X.
Grid ad_operator_grid(const Mat& m, const Mat* rhs) {
  int n = m.dim();
  Grid g(m.field(), n * n, n * n + (rhs ? 1 : 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int row = i * n + j;
      // (MX)_{ij} contributes M_{ia} X_{aj}; (XM)_{ij} contributes X_{ib} M_{bj}
      for (int a = 0; a < n; ++a) g.at(row, a * n + j) += m.at(i, a);
      for (int b = 0; b < n; ++b) g.at(row, i * n + b) -= m.at(b, j);
    }
  if (rhs)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.at(i * n + j, n * n) = rhs->at(i, j);
  return g;
}

}  // namespace

int rank(const Mat& m) {
  Grid g(m.field(), m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) g.at(i, j) = m.at(i, j);
  return static_cast<int>(rref(g).size());
}

int rank_of_vectors(std::span<const Vec> vs) {
  if (vs.empty()) return 0;
  int n = vs[0].dim();
  Grid g(vs[0].field(), n, static_cast<int>(vs.size()));
  for (std::size_t c = 0; c < vs.size(); ++c)
    for (int i = 0; i < n; ++i) g.at(i, static_cast<int>(c)) = vs[c].at(i);
  return static_cast<int>(rref(g).size());
}

std::vector<Vec> kernel(const Mat& m) {
  Grid g(m.field(), m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) g.at(i, j) = m.at(i, j);
  std::vector<Vec> out;
  for (auto& v : kernel_grid(g)) out.emplace_back(m.field(), std::move(v));
  return out;
}

std::optional<Mat> try_inverse(const Mat& m) {
  int n = m.dim();
  Grid g(m.field(), n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.at(i, j) = m.at(i, j);
    g.at(i, n + i) = m.field()->one();
  }
  // The identity block always contributes pivots, so counting them is not
  // enough; a singular input shows up as a pivot escaping into the right half.
  auto pivots = rref(g);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] >= n) return std::nullopt;
  Mat inv(m.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = g.at(i, n + j);
  return inv;
}

Mat inverse(const Mat& m) {
  auto inv = try_inverse(m);
  if (!inv) throw error("matrix is singular");
  return *inv;
}

Mat conjugate(const Mat& p, const Mat& m) { return inverse(p) * m * p; }

std::optional<std::vector<Scalar>> solve_linear(std::span<const Mat> family, const Mat& target) {
  Grid g = grid_from_cols_mat(family, target);
  return solve_grid(g);
}

std::optional<std::vector<Scalar>> solve_linear(std::span<const Vec> family, const Vec& target) {
  Grid g = grid_from_cols_vec(family, target);
  return solve_grid(g);
}

bool in_span(std::span<const Vec> family, const Vec& v) { return solve_linear(family, v).has_value(); }
bool in_span(std::span<const Mat> family, const Mat& m) { return solve_linear(family, m).has_value(); }

// --------------------------------------------------- similarity invariants

namespace {

Poly det_of_poly_matrix(std::vector<std::vector<Poly>>& m, const Field& f) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly acc(f);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (std::size_t c = 1; c < n; ++c) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly term = m[i][0] * det_of_poly_matrix(minor, f);
    if (i % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

}  // namespace

Poly char_poly(const Mat& m) {
  // Laplace expansion of det(tI - M) over K[t]: exponential in principle but
  // perfectly fine at the dimensions this library targets.
  const Field& f = m.field();
  int n = m.dim();
  std::vector<std::vector<Poly>> tm;
  tm.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Poly> row;
    row.reserve(n);
    for (int j = 0; j < n; ++j) {
      Poly p = Poly::constant(-m.at(i, j));
      if (i == j) p = p + Poly::monomial(f, 1);
      row.push_back(std::move(p));
    }
    tm.push_back(std::move(row));
  }
  return det_of_poly_matrix(tm, f);
}

Poly min_poly(const Mat& m) {
  const Field& f = m.field();
  std::vector<Mat> powers = {Mat::identity(f, m.dim())};
  for (int d = 1; d <= m.dim(); ++d) {
    Mat next = powers.back() * m;
    if (auto c = solve_linear(powers, next)) {
      std::vector<Scalar> coeffs;
      coeffs.reserve(d + 1);
      for (auto& ci : *c) coeffs.push_back(-ci);
      coeffs.push_back(f->one());
      return Poly(f, std::move(coeffs));
    }
    powers.push_back(std::move(next));
  }
  throw error("internal: minimal polynomial not found by degree n");
}

bool is_cyclic(const Mat& m) { return min_poly(m).degree() == m.dim(); }

Poly local_min_poly(const Mat& m, const Vec& x) {
  if (x.is_zero()) throw error("local minimal polynomial of the zero vector");
  const Field& f = m.field();
  std::vector<Vec> krylov = {x};
  for (int d = 1; d <= m.dim(); ++d) {
    Vec next = m.apply(krylov.back());
    if (auto c = solve_linear(krylov, next)) {
      std::vector<Scalar> coeffs;
      coeffs.reserve(d + 1);
      for (auto& ci : *c) coeffs.push_back(-ci);
      coeffs.push_back(f->one());
      return Poly(f, std::move(coeffs));
    }
    krylov.push_back(std::move(next));
  }
  throw error("internal: local minimal polynomial not found by degree n");
}

// --------------------------------------------------- commutator machinery

std::vector<Mat> centralizer_basis(const Mat& m) {
  int n = m.dim();
  Grid g = ad_operator_grid(m, nullptr);
  std::vector<Mat> basis;
  for (auto& v : kernel_grid(g)) {
    Mat b(m.field(), n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b.at(i, j) = v[i * n + j];
    basis.push_back(std::move(b));
  }
  return basis;
}

bool in_image_ad(const Mat& m, const Mat& n) {
  if (m.dim() != n.dim()) throw error("matrix dimension mismatch");
  for (const Mat& c : centralizer_basis(m))
    if (!trace_form(c, n).is_zero()) return false;
  return true;
}

bool in_image_ad_power_trace(const Mat& m, const Mat& n) {
  if (!is_cyclic(m)) throw error("power-trace membership test wants a cyclic matrix");
  Mat p = Mat::identity(m.field(), m.dim());
  for (int k = 0; k < m.dim(); ++k) {
    if (!trace_form(p, n).is_zero()) return false;
    p = p * m;
  }
  return true;
}

HessenbergProfile hessenberg_profile(const Mat& m) {
  HessenbergProfile out;
  out.is_hessenberg = true;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j + 1 < i; ++j)
      if (!m.at(i, j).is_zero()) out.is_hessenberg = false;
  for (int j = 0; j + 1 < m.dim(); ++j)
    if (!m.at(j + 1, j).is_zero()) out.subdiagonal_support.push_back(j);
  return out;
}

bool hessenberg_in_image_jordan(const Mat& a) {
  auto prof = hessenberg_profile(a);
  if (!prof.is_hessenberg) throw error("matrix is not Hessenberg");
  if (!a.trace().is_zero()) return false;
  Scalar s = a.field()->zero();
  for (int j = 0; j + 1 < a.dim(); ++j) s += a.at(j + 1, j);
  return s.is_zero();
}

std::optional<Mat> solve_commutator_equation(const Mat& m, const Mat& a) {
  if (m.dim() != a.dim()) throw error("matrix dimension mismatch");
  if (!m.field()->same_field(*a.field())) throw error("matrices over different fields");
  int n = m.dim();
  Grid g = ad_operator_grid(m, &a);
  auto x = solve_grid(g);
  if (!x) return std::nullopt;
  Mat out(m.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = (*x)[i * n + j];
  return out;
}

// --------------------------------------------------- Hessenberg helpers

Mat hessenberg_basis_from(const Mat& a, std::span<const Vec> seeds) {
  int n = a.dim();
  if (seeds.empty()) throw error("need at least one seed vector");
  std::vector<Vec> cols;
  cols.reserve(n);
  for (const Vec& s : seeds) {
    if (s.dim() != n) throw error("seed dimension mismatch");
    if (in_span(cols, s)) throw error("seed vectors are linearly dependent");
    cols.push_back(s);
    if (static_cast<int>(cols.size()) == n) break;
  }
  while (static_cast<int>(cols.size()) < n) {
    Vec next = a.apply(cols.back());
    if (!in_span(cols, next)) {
      cols.push_back(std::move(next));
      continue;
    }
    bool inserted = false;
    for (int i = 0; i < n && !inserted; ++i) {
      Vec e = Vec::unit(a.field(), n, i);
      if (!in_span(cols, e)) {
        cols.push_back(std::move(e));
        inserted = true;
      }
    }
    if (!inserted) throw error("internal: span exhausted before reaching full dimension");
  }
  return Mat::from_cols(a.field(), cols);
}

std::optional<std::pair<Vec, Vec>> two_noneigenvectors(const Mat& m) {
  const Field& f = m.field();
  if (f->is_finite() && f->order() < 3) throw error("needs a field with at least three elements");
  if (m.is_scalar()) return std::nullopt;

  int n = m.dim();
  std::vector<Scalar> cs;
  if (f->is_finite()) {
    for (std::int64_t i = 1; i < f->order(); ++i) cs.push_back(f->element(i));
  } else {
    for (int v : {1, -1, 2, -2, 3, -3}) cs.push_back(f->from_int(v));
  }

  std::vector<Vec> candidates;
  for (int i = 0; i < n; ++i) candidates.push_back(Vec::unit(f, n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const Scalar& c : cs) {
        Vec v = Vec::unit(f, n, i);
        v.at(j) = c;
        candidates.push_back(std::move(v));
      }

  auto non_eigen = [&](const Vec& x) {
    std::vector<Vec> fam = {x};
    return !in_span(fam, m.apply(x));
  };

  std::optional<Vec> first;
  for (const Vec& x : candidates) {
    if (!non_eigen(x)) continue;
    if (!first) {
      first = x;
      continue;
    }
    std::vector<Vec> fam = {*first};
    if (!in_span(fam, x)) return std::make_pair(*first, x);
  }
  throw error("internal: matrix is non-scalar but a second non-eigenvector was not found");
}

}  // namespace slb
