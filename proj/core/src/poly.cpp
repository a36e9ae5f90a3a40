#include "slbracket/poly.hpp"

#include <algorithm>

namespace slb {

Poly::Poly(Field f, std::vector<Scalar> coeffs) : field_(std::move(f)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!c.field()->same_field(*field_)) throw error("polynomial coefficient from foreign field");
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::one(const Field& f) { return constant(f->one()); }

Poly Poly::constant(Scalar c) {
  Poly p(c.field());
  if (!c.is_zero()) p.coeffs_.push_back(std::move(c));
  return p;
}

Poly Poly::monomial(const Field& f, int degree) {
  if (degree < 0) throw error("negative monomial degree");
  Poly p(f);
  p.coeffs_.assign(degree, f->zero());
  p.coeffs_.push_back(f->one());
  return p;
}

bool Poly::is_monic() const { return !is_zero() && coeffs_.back().is_one(); }

Scalar Poly::coeff(int i) const {
  if (i < 0) throw error("negative coefficient index");
  if (i > degree()) return field_->zero();
  return coeffs_[i];
}

Scalar Poly::leading() const {
  if (is_zero()) throw error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Scalar Poly::eval(const Scalar& x) const {
  if (!x.field()->same_field(*field_)) throw error("evaluating at a foreign-field point");
  Scalar acc = field_->zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) throw error("cannot normalise the zero polynomial");
  return scale(field_->inv(coeffs_.back()));
}

Poly Poly::scale(const Scalar& c) const {
  Poly out(field_);
  out.coeffs_.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.coeffs_.push_back(a * c);
  out.trim();
  return out;
}

Poly Poly::shift(int k) const {
  if (k < 0) throw error("negative shift");
  if (is_zero()) return *this;
  Poly out(field_);
  out.coeffs_.assign(k, field_->zero());
  out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (!a.field_->same_field(*b.field_)) throw error("adding polynomials over different fields");
  Poly out(a.field_);
  std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  out.coeffs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs_.push_back(a.coeff(i) + b.coeff(i));
  out.trim();
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (!a.field_->same_field(*b.field_)) throw error("subtracting polynomials over different fields");
  Poly out(a.field_);
  std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  out.coeffs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.coeffs_.push_back(a.coeff(i) - b.coeff(i));
  out.trim();
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (!a.field_->same_field(*b.field_)) throw error("multiplying polynomials over different fields");
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  Poly out(a.field_);
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_->zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  out.trim();
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (!a.field_->same_field(*b.field_)) throw error("comparing polynomials over different fields");
  return a.coeffs_ == b.coeffs_;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw error("polynomial division by zero");
  if (!a.field_->same_field(*b.field_)) throw error("dividing polynomials over different fields");
  const Field& f = a.field_;
  Poly q(f), r = a;
  Scalar lead_inv = f->inv(b.leading());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    Scalar c = r.leading() * lead_inv;
    q = q + Poly::constant(c).shift(d);
    r = r - b.scale(c).shift(d);
  }
  return {std::move(q), std::move(r)};
}

bool Poly::divides(const Poly& other) const { return divmod(other, *this).second.is_zero(); }

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Scalar c = coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || !c.is_one()) s += c.str();
    if (i > 0) {
      if (!c.is_one()) s += "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

namespace {

// Divisors of |v| in ascending order, by trial division.  Instance sizes here
// are char-poly coefficients of small integer matrices, so this is cheap.
std::vector<boost::multiprecision::cpp_int> divisors(boost::multiprecision::cpp_int v) {
  using boost::multiprecision::cpp_int;
  if (v < 0) v = -v;
  std::vector<cpp_int> low, high;
  for (cpp_int d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      low.push_back(d);
      if (d * d != v) high.push_back(v / d);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

}  // namespace

std::vector<Scalar> roots_in_field(const Poly& p) {
  const Field& f = p.field();
  std::vector<Scalar> roots;
  if (p.is_zero()) throw error("every element is a root of the zero polynomial");
  if (f->is_finite()) {
    for (std::int64_t i = 0; i < f->order(); ++i) {
      Scalar x = f->element(i);
      if (p.eval(x).is_zero()) roots.push_back(std::move(x));
    }
    return roots;
  }
  // Rational root theorem: clear denominators to get integer coefficients,
  // then candidates are +-(divisor of constant)/(divisor of leading).
  using boost::multiprecision::cpp_int;
  cpp_int lcm = 1;
  for (const auto& c : p.coeffs())
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(c.rational()));
  std::vector<cpp_int> zc;
  zc.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Rational scaled = c.rational() * lcm;
    zc.push_back(boost::multiprecision::numerator(scaled));
  }
  // strip powers of t first; zero constant term means 0 is a root
  std::size_t low = 0;
  while (low < zc.size() && zc[low] == 0) ++low;
  if (low > 0) roots.push_back(f->zero());
  if (low >= zc.size() - 1) return roots;  // p = c * t^deg
  for (const auto& num : divisors(zc[low])) {
    for (const auto& den : divisors(zc.back())) {
      for (int sign : {1, -1}) {
        Rational cand(sign * num, den);
        Scalar x = f->from_rational(cand);
        if (p.eval(x).is_zero() &&
            std::find(roots.begin(), roots.end(), x) == roots.end())
          roots.push_back(std::move(x));
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace slb
