#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace slb {

// Base class for everything this library throws on domain errors
// (bad constructions, singular inverses, mixed-field arithmetic, ...).
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;

// Residues of a finite-field element, low degree first.  Degree <= 4 stays
// inline; larger extensions spill to the heap but still work.
using FfWord = std::int64_t;
using FfCoeffs = boost::container::small_vector<FfWord, 4>;

enum class FieldKind { prime, extension, rational };

class FieldSpec;
class Scalar;

// Fields are immutable once built and shared by handle.  Two handles denote
// the same field when their specs compare structurally equal, so scalars from
// independently constructed GF(5) instances mix freely.
using Field = std::shared_ptr<const FieldSpec>;

class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
 public:
  static Field prime(std::int64_t p);
  // Extension field GF(p^degree).  Without an explicit modulus the
  // lexicographically smallest monic irreducible is chosen, comparing
  // coefficients low degree first.
  static Field extension(std::int64_t p, int degree);
  static Field extension(std::int64_t p, int degree, std::vector<FfWord> modulus);
  static Field rationals();

  // Descriptor grammar: "gf <p>", "gf <p> <k>", "gf <p> <k> <c0>,...,<ck>", "q".
  // "gf5" style with the number glued to the prefix is accepted too.
  static Field parse(std::string_view descriptor);
  std::string descriptor() const;

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FieldKind::rational; }
  std::int64_t characteristic() const { return p_; }  // 0 for the rationals
  int degree() const { return degree_; }
  std::int64_t order() const;                      // q = p^k; throws for the rationals
  const std::vector<FfWord>& modulus() const;      // extension fields only

  bool same_field(const FieldSpec& other) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(Rational r) const;    // rational field only
  Scalar from_coeffs(FfCoeffs c) const;      // finite fields; reduces mod p

  // Enumeration order over a finite field: index 0 is 0, then elements by
  // their coefficient vectors read as base-p digits, c0 least significant.
  Scalar element(std::int64_t index) const;
  std::int64_t index_of(const Scalar& a) const;
  std::vector<Scalar> elements() const;      // throws for the rationals

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;         // throws on zero
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar pow(const Scalar& a, std::int64_t e) const;

  // Element literals: prime fields use the decimal residue, extensions the
  // comma-joined coefficient list "c0,...,c_{k-1}", rationals "num/den".
  Scalar parse_scalar(std::string_view text) const;
  std::string format(const Scalar& a) const;

 private:
  FieldSpec() = default;
  Field self() const { return shared_from_this(); }
  void check_same(const Scalar& a, const Scalar& b) const;
  void check_mine(const Scalar& a) const;

  FieldKind kind_ = FieldKind::prime;
  std::int64_t p_ = 0;
  int degree_ = 1;
  std::int64_t order_ = 0;
  std::vector<FfWord> modulus_;  // size degree_+1, monic; extensions only
};

Field parse_field_descriptor(std::string_view descriptor);

class Scalar {
 public:
  Scalar() = delete;  // scalars always belong to a field

  const Field& field() const { return field_; }
  FieldKind kind() const { return field_->kind(); }
  bool is_zero() const;
  bool is_one() const;

  const FfCoeffs& coeffs() const;    // finite fields
  const Rational& rational() const;  // rational field

  std::string str() const { return field_->format(*this); }

  Scalar operator-() const { return field_->neg(*this); }
  Scalar& operator+=(const Scalar& o) { return *this = field_->add(*this, o); }
  Scalar& operator-=(const Scalar& o) { return *this = field_->sub(*this, o); }
  Scalar& operator*=(const Scalar& o) { return *this = field_->mul(*this, o); }
  Scalar& operator/=(const Scalar& o) { return *this = field_->div(*this, o); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Equality is representation equality within one field; comparing scalars
  // from different fields is an error, not "false".
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Strict total order (same field only); exists so scalars can key sets.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  friend class FieldSpec;
  Scalar(Field f, FfCoeffs c) : field_(std::move(f)), coeffs_(std::move(c)) {}
  Scalar(Field f, Rational r) : field_(std::move(f)), rat_(std::move(r)) {}

  Field field_;
  FfCoeffs coeffs_;  // finite representation
  Rational rat_;     // rational representation
};

inline bool same_field(const Scalar& a, const Scalar& b) {
  return a.field()->same_field(*b.field());
}

}  // namespace slb
