#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slbracket/field.hpp"
#include "slbracket/poly.hpp"

namespace slb {

// Column vector over a field.  Indices are 0-based throughout the library;
// the classical 1-based notation of the underlying results is translated in
// comments where it matters.
class Vec {
 public:
  Vec(Field f, int dim);  // zero vector
  Vec(Field f, std::vector<Scalar> entries);
  static Vec unit(const Field& f, int dim, int i);

  const Field& field() const { return field_; }
  int dim() const { return static_cast<int>(v_.size()); }
  Scalar& at(int i);
  const Scalar& at(int i) const;
  bool is_zero() const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec scaled(const Scalar& c) const;
  friend bool operator==(const Vec& a, const Vec& b);
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

  std::string str() const;

 private:
  Field field_;
  std::vector<Scalar> v_;
};

// Dense square matrix, row-major.
class Mat {
 public:
  Mat(Field f, int n);  // zero matrix
  static Mat zero(const Field& f, int n) { return Mat(f, n); }
  static Mat identity(const Field& f, int n);
  static Mat scalar(const Field& f, int n, const Scalar& c);
  static Mat unit(const Field& f, int n, int i, int j);  // E_{ij}, 0-based
  static Mat jordan(const Field& f, int n);              // nilpotent block: ones on the superdiagonal
  static Mat diagonal(std::vector<Scalar> d);
  static Mat companion(const Poly& monic);
  static Mat from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows);
  static Mat from_cols(const Field& f, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  int dim() const { return n_; }
  Scalar& at(int i, int j);
  const Scalar& at(int i, int j) const;

  Scalar trace() const;
  Mat transpose() const;
  Vec col(int j) const;
  Vec row(int i) const;
  Vec apply(const Vec& x) const;  // M * x
  bool is_zero() const;
  bool is_scalar() const;  // multiple of the identity

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Scalar& c) const;
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
  friend bool operator<(const Mat& a, const Mat& b);  // entry-lex; for set keys

  std::string str() const;  // rows of space-separated element literals

 private:
  Field field_;
  int n_;
  std::vector<Scalar> e_;
};

Mat commutator(const Mat& a, const Mat& b);       // ab - ba
Scalar trace_form(const Mat& a, const Mat& b);    // tr(ab)
Mat mat_pow(const Mat& m, int k);
Mat poly_at(const Poly& p, const Mat& m);         // p(M)

// --- exact elimination -----------------------------------------------------
//
// Every rank / kernel / solve below runs Gaussian elimination with
// first-nonzero pivoting (scan rows top down, take the first nonzero entry),
// so results are deterministic functions of the input.

int rank(const Mat& m);
int rank_of_vectors(std::span<const Vec> vs);
std::vector<Vec> kernel(const Mat& m);  // basis, deterministic order
std::optional<Mat> try_inverse(const Mat& m);
Mat inverse(const Mat& m);              // throws on singular input
Mat conjugate(const Mat& p, const Mat& m);  // p^{-1} m p; throws on singular p

// Coefficients expressing `target` in the given spanning family, flattening
// matrices row-major.  Free variables are pinned to zero, so the answer is
// canonical.  Empty optional when target lies outside the span.
std::optional<std::vector<Scalar>> solve_linear(std::span<const Mat> family, const Mat& target);
std::optional<std::vector<Scalar>> solve_linear(std::span<const Vec> family, const Vec& target);
bool in_span(std::span<const Vec> family, const Vec& v);
bool in_span(std::span<const Mat> family, const Mat& m);

// --- similarity invariants ---------------------------------------------------

Poly char_poly(const Mat& m);  // det(tI - M), computed over the polynomial ring
Poly min_poly(const Mat& m);
bool is_cyclic(const Mat& m);  // deg min_poly == n
Poly local_min_poly(const Mat& m, const Vec& x);  // monic annihilator of x; x != 0

// --- commutator machinery ----------------------------------------------------

// Basis of the centraliser {X : MX = XM}, in deterministic order.
std::vector<Mat> centralizer_basis(const Mat& m);

// Whether N lies in the image of X |-> MX - XM.  Decided through the duality
// im(ad_M) = C(M)^perp for the trace form, which holds over any field.
bool in_image_ad(const Mat& m, const Mat& n);

// Same membership via the power-trace test tr(M^k N) = 0 for k < n.
// Only valid for cyclic M, where C(M) = K[M].
bool in_image_ad_power_trace(const Mat& m, const Mat& n);

// For Hessenberg A: membership of A in im(ad_J) for the nilpotent Jordan
// block J reduces to tr(A) = 0 and the subdiagonal summing to zero.
bool hessenberg_in_image_jordan(const Mat& a);  // throws when A is not Hessenberg

// Canonical solution X of MX - XM = A (row-major flattening, free variables
// zero); empty when A is outside the image.
std::optional<Mat> solve_commutator_equation(const Mat& m, const Mat& a);

// --- Hessenberg helpers ------------------------------------------------------

struct HessenbergProfile {
  bool is_hessenberg = false;          // all entries below the subdiagonal vanish
  std::vector<int> subdiagonal_support;  // 0-based j with M[j+1][j] != 0
};
HessenbergProfile hessenberg_profile(const Mat& m);

// Completes the seed columns to a basis by repeatedly applying A to the last
// column while it extends the span, otherwise inserting the first canonical
// basis vector outside the span.  The result P is invertible; when the seeds
// form an A-chain (x, Ax, A^2 x, ...) the conjugate P^{-1} A P is Hessenberg.
Mat hessenberg_basis_from(const Mat& a, std::span<const Vec> seeds);

// Two linearly independent vectors x with (x, Mx) independent, scanning the
// canonical basis vectors and then e_i + c e_j for nonzero c in a fixed
// order.  Empty exactly when M is a scalar multiple of the identity.
// Requires a field with at least three elements.
std::optional<std::pair<Vec, Vec>> two_noneigenvectors(const Mat& m);

}  // namespace slb
