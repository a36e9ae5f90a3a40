#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slbracket/field.hpp"

namespace slb {

// Univariate polynomial over a field.  Coefficients are stored low degree
// first and kept canonical: no trailing zeros, so degree() of the zero
// polynomial is -1.
class Poly {
 public:
  explicit Poly(Field f) : field_(std::move(f)) {}
  Poly(Field f, std::vector<Scalar> coeffs);

  static Poly zero(Field f) { return Poly(std::move(f)); }
  static Poly one(const Field& f);
  static Poly constant(Scalar c);
  static Poly monomial(const Field& f, int degree);  // t^degree

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(int i) const;  // zero beyond the degree
  Scalar leading() const;     // throws on the zero polynomial

  Scalar eval(const Scalar& x) const;
  Poly monic() const;
  Poly scale(const Scalar& c) const;
  Poly shift(int k) const;  // multiply by t^k

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; throws when b is zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  bool divides(const Poly& other) const;

  std::string str() const;  // human form, e.g. "t^3 + 2t + 4"

 private:
  void trim();
  Field field_;
  std::vector<Scalar> coeffs_;
};

// All roots of p lying in its coefficient field.  Finite fields are scanned
// exhaustively; over the rationals candidates come from the rational root
// theorem after clearing denominators.
std::vector<Scalar> roots_in_field(const Poly& p);

}  // namespace slb
