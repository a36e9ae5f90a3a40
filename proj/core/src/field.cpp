#include "slbracket/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace slb {
namespace {

constexpr std::int64_t kMaxCharacteristic = (std::int64_t{1} << 31) - 1;
constexpr std::int64_t kMaxOrder = 100'000'000;

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  // extended Euclid; a nonzero mod p, p prime
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod_norm(a, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) throw error("not invertible modulo " + std::to_string(p));
  return mod_norm(t, p);
}

// Dense polynomials over GF(p) used only for modulus bookkeeping; the public
// Poly type lives in poly.hpp and works over any field.
using Fp = std::vector<FfWord>;

void fp_trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

Fp fp_mul(const Fp& a, const Fp& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = mod_norm(out[i + j] + a[i] * b[j], p);
  fp_trim(out);
  return out;
}

// a mod b, b nonzero
Fp fp_rem(Fp a, const Fp& b, std::int64_t p) {
  fp_trim(a);
  std::int64_t lead_inv = mod_inv(b.back(), p);
  while (fp_deg(a) >= fp_deg(b)) {
    std::int64_t c = mod_norm(a.back() * lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = mod_norm(a[shift + i] - c * b[i], p);
    fp_trim(a);
  }
  return a;
}

// Inverse of a modulo m in GF(p)[t] via extended Euclid.
Fp fp_inv_mod(Fp a, Fp m, std::int64_t p) {
  fp_trim(a);
  if (a.empty()) throw error("division by zero");
  Fp r0 = std::move(m), r1 = std::move(a);
  Fp t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    Fp q(std::max<std::size_t>(r0.size(), 1), 0);
    Fp rem = r0;
    std::int64_t lead_inv = mod_inv(r1.back(), p);
    while (fp_deg(rem) >= fp_deg(r1)) {
      std::int64_t c = mod_norm(rem.back() * lead_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q.resize(std::max(q.size(), shift + 1), 0);
      q[shift] = mod_norm(q[shift] + c, p);
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = mod_norm(rem[shift + i] - c * r1[i], p);
      fp_trim(rem);
    }
    fp_trim(q);
    Fp qt1 = fp_mul(q, t1, p);
    Fp nt(std::max(t0.size(), qt1.size()), 0);
    for (std::size_t i = 0; i < nt.size(); ++i) {
      std::int64_t v = (i < t0.size() ? t0[i] : 0) - (i < qt1.size() ? qt1[i] : 0);
      nt[i] = mod_norm(v, p);
    }
    fp_trim(nt);
    t0 = std::move(t1);
    t1 = std::move(nt);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  if (fp_deg(r0) != 0) throw error("element not invertible: modulus not irreducible?");
  std::int64_t scale = mod_inv(r0[0], p);
  for (auto& c : t0) c = mod_norm(c * scale, p);
  fp_trim(t0);
  return t0;
}

bool fp_irreducible(const Fp& m, std::int64_t p) {
  int k = fp_deg(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  // Trial division by every monic polynomial of degree 1..k/2.  A nontrivial
  // factorisation always contains a factor in that range.
  for (int d = 1; 2 * d <= k; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) {
      count *= p;
      if (count > 2'000'000) throw error("modulus degree too large for irreducibility test");
    }
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Fp div(d + 1, 0);
      div[d] = 1;
      std::int64_t rest = idx;
      for (int i = 0; i < d; ++i) {
        div[i] = rest % p;
        rest /= p;
      }
      if (fp_rem(m, div, p).empty()) return false;
    }
  }
  return true;
}

// Smallest irreducible monic of the given degree, coefficients compared low
// degree first (c0 most significant in the comparison).
Fp fp_default_modulus(std::int64_t p, int k) {
  std::vector<FfWord> c(k, 0);
  while (true) {
    Fp m(c.begin(), c.end());
    m.push_back(1);
    if (fp_irreducible(m, p)) return m;
    int i = k - 1;
    while (i >= 0 && c[i] == p - 1) c[i--] = 0;
    if (i < 0) throw error("no irreducible modulus found");  // cannot happen
    ++c[i];
  }
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::int64_t parse_int(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw error(std::string("bad ") + what + ": '" + tok + "'");
  }
}

}  // namespace

Field FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw error("characteristic must be prime, got " + std::to_string(p));
  if (p > kMaxCharacteristic) throw error("characteristic out of supported range");
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::prime;
  f->p_ = p;
  f->degree_ = 1;
  f->order_ = p;
  return f;
}

Field FieldSpec::extension(std::int64_t p, int degree) {
  if (!is_prime(p)) throw error("characteristic must be prime, got " + std::to_string(p));
  if (degree < 1) throw error("extension degree must be >= 1");
  if (degree == 1) return prime(p);
  // Check the order cap before hunting for a modulus; the irreducibility
  // search costs p^(degree/2) and must not run for orders we reject anyway.
  std::int64_t order = 1;
  for (int i = 0; i < degree; ++i) {
    order *= p;
    if (order > kMaxOrder) throw error("field order out of supported range");
  }
  Fp m = fp_default_modulus(p, degree);
  return extension(p, degree, std::vector<FfWord>(m.begin(), m.end()));
}

Field FieldSpec::extension(std::int64_t p, int degree, std::vector<FfWord> modulus) {
  if (!is_prime(p)) throw error("characteristic must be prime, got " + std::to_string(p));
  if (degree < 1) throw error("extension degree must be >= 1");
  if (degree == 1) {
    // Accept a degree-1 modulus for uniformity but collapse to the prime field.
    return prime(p);
  }
  if (static_cast<int>(modulus.size()) != degree + 1)
    throw error("modulus must list " + std::to_string(degree + 1) + " coefficients");
  for (auto& c : modulus) c = mod_norm(c, p);
  if (modulus.back() != 1) throw error("modulus must be monic");
  if (!fp_irreducible(Fp(modulus.begin(), modulus.end()), p))
    throw error("modulus is reducible over GF(" + std::to_string(p) + ")");
  std::int64_t order = 1;
  for (int i = 0; i < degree; ++i) {
    order *= p;
    if (order > kMaxOrder) throw error("field order out of supported range");
  }
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::extension;
  f->p_ = p;
  f->degree_ = degree;
  f->order_ = order;
  f->modulus_ = std::move(modulus);
  return f;
}

Field FieldSpec::rationals() {
  auto f = std::shared_ptr<FieldSpec>(new FieldSpec());
  f->kind_ = FieldKind::rational;
  f->p_ = 0;
  f->degree_ = 1;
  f->order_ = 0;
  return f;
}

Field FieldSpec::parse(std::string_view descriptor) {
  auto toks = split_ws(descriptor);
  if (toks.empty()) throw error("empty field descriptor");
  if (toks[0] == "q") {
    if (toks.size() != 1) throw error("trailing tokens after 'q'");
    return rationals();
  }
  // allow "gf5" as well as "gf 5"
  if (toks[0].size() > 2 && toks[0].rfind("gf", 0) == 0) {
    toks.insert(toks.begin() + 1, toks[0].substr(2));
    toks[0] = "gf";
  }
  if (toks[0] != "gf") throw error("unknown field descriptor '" + std::string(descriptor) + "'");
  if (toks.size() < 2 || toks.size() > 4) throw error("field descriptor wants 'gf <p> [<k> [<mod>]]'");
  std::int64_t p = parse_int(toks[1], "characteristic");
  if (toks.size() == 2) {
    // "gf <q>" with q a prime power picks the default modulus, so gf 4 and
    // gf 2 2 name the same field
    if (is_prime(p)) return prime(p);
    for (std::int64_t d = 2; d * d <= p; ++d) {
      if (p % d != 0) continue;
      std::int64_t rest = p;
      int k = 0;
      while (rest % d == 0) {
        rest /= d;
        ++k;
      }
      if (rest == 1 && is_prime(d)) return extension(d, k);
      break;
    }
    throw error("field order must be a prime power, got " + std::to_string(p));
  }
  std::int64_t k = parse_int(toks[2], "extension degree");
  if (k < 1 || k > 64) throw error("extension degree out of range");
  if (toks.size() == 3) return extension(p, static_cast<int>(k));
  std::vector<FfWord> mod;
  std::string cur;
  for (char ch : toks[3] + ",") {
    if (ch == ',') {
      mod.push_back(parse_int(cur, "modulus coefficient"));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return extension(p, static_cast<int>(k), std::move(mod));
}

std::string FieldSpec::descriptor() const {
  switch (kind_) {
    case FieldKind::prime:
      return "gf " + std::to_string(p_);
    case FieldKind::extension: {
      std::string s = "gf " + std::to_string(p_) + " " + std::to_string(degree_) + " ";
      for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(modulus_[i]);
      }
      return s;
    }
    case FieldKind::rational:
      return "q";
  }
  throw error("corrupt field kind");
}

std::int64_t FieldSpec::order() const {
  if (!is_finite()) throw error("the rationals are not a finite field");
  return order_;
}

const std::vector<FfWord>& FieldSpec::modulus() const {
  if (kind_ != FieldKind::extension) throw error("modulus only defined for extension fields");
  return modulus_;
}

bool FieldSpec::same_field(const FieldSpec& other) const {
  if (this == &other) return true;
  return kind_ == other.kind_ && p_ == other.p_ && degree_ == other.degree_ &&
         modulus_ == other.modulus_;
}

void FieldSpec::check_mine(const Scalar& a) const {
  if (!same_field(*a.field())) throw error("scalar belongs to a different field");
}

void FieldSpec::check_same(const Scalar& a, const Scalar& b) const {
  check_mine(a);
  check_mine(b);
}

Scalar FieldSpec::zero() const {
  if (kind_ == FieldKind::rational) return Scalar(self(), Rational(0));
  return Scalar(self(), FfCoeffs(degree_, 0));
}

Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(std::int64_t v) const {
  if (kind_ == FieldKind::rational) return Scalar(self(), Rational(v));
  FfCoeffs c(degree_, 0);
  c[0] = mod_norm(v, p_);
  return Scalar(self(), std::move(c));
}

Scalar FieldSpec::from_rational(Rational r) const {
  if (kind_ != FieldKind::rational) throw error("from_rational wants the rational field");
  return Scalar(self(), std::move(r));
}

Scalar FieldSpec::from_coeffs(FfCoeffs c) const {
  if (!is_finite()) throw error("from_coeffs wants a finite field");
  if (static_cast<int>(c.size()) > degree_) throw error("too many coefficients");
  c.resize(degree_, 0);
  for (auto& w : c) w = mod_norm(w, p_);
  return Scalar(self(), std::move(c));
}

Scalar FieldSpec::element(std::int64_t index) const {
  if (!is_finite()) throw error("cannot enumerate the rationals");
  if (index < 0 || index >= order_) throw error("element index out of range");
  FfCoeffs c(degree_, 0);
  for (int i = 0; i < degree_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return Scalar(self(), std::move(c));
}

std::int64_t FieldSpec::index_of(const Scalar& a) const {
  check_mine(a);
  if (!is_finite()) throw error("cannot index into the rationals");
  std::int64_t idx = 0;
  for (int i = degree_ - 1; i >= 0; --i) idx = idx * p_ + a.coeffs()[i];
  return idx;
}

std::vector<Scalar> FieldSpec::elements() const {
  if (!is_finite()) throw error("cannot enumerate the rationals");
  std::vector<Scalar> out;
  out.reserve(order_);
  for (std::int64_t i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

Scalar FieldSpec::add(const Scalar& a, const Scalar& b) const {
  check_same(a, b);
  if (kind_ == FieldKind::rational) return Scalar(self(), a.rational() + b.rational());
  FfCoeffs c(degree_, 0);
  for (int i = 0; i < degree_; ++i) c[i] = mod_norm(a.coeffs()[i] + b.coeffs()[i], p_);
  return Scalar(self(), std::move(c));
}

Scalar FieldSpec::sub(const Scalar& a, const Scalar& b) const {
  check_same(a, b);
  if (kind_ == FieldKind::rational) return Scalar(self(), a.rational() - b.rational());
  FfCoeffs c(degree_, 0);
  for (int i = 0; i < degree_; ++i) c[i] = mod_norm(a.coeffs()[i] - b.coeffs()[i], p_);
  return Scalar(self(), std::move(c));
}

Scalar FieldSpec::neg(const Scalar& a) const {
  check_mine(a);
  if (kind_ == FieldKind::rational) return Scalar(self(), -a.rational());
  FfCoeffs c(degree_, 0);
  for (int i = 0; i < degree_; ++i) c[i] = mod_norm(-a.coeffs()[i], p_);
  return Scalar(self(), std::move(c));
}

Scalar FieldSpec::mul(const Scalar& a, const Scalar& b) const {
  check_same(a, b);
  switch (kind_) {
    case FieldKind::rational:
      return Scalar(self(), a.rational() * b.rational());
    case FieldKind::prime:
      return Scalar(self(), FfCoeffs{mod_norm(a.coeffs()[0] * b.coeffs()[0], p_)});
    case FieldKind::extension: {
      // schoolbook product followed by reduction against the monic modulus
      std::vector<FfWord> prod(2 * degree_ - 1, 0);
      for (int i = 0; i < degree_; ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (int j = 0; j < degree_; ++j)
          prod[i + j] = mod_norm(prod[i + j] + a.coeffs()[i] * b.coeffs()[j], p_);
      }
      for (int i = 2 * degree_ - 2; i >= degree_; --i) {
        FfWord c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < degree_; ++j)
          prod[i - degree_ + j] = mod_norm(prod[i - degree_ + j] - c * modulus_[j], p_);
      }
      FfCoeffs out(prod.begin(), prod.begin() + degree_);
      return Scalar(self(), std::move(out));
    }
  }
  throw error("corrupt field kind");
}

Scalar FieldSpec::inv(const Scalar& a) const {
  check_mine(a);
  if (a.is_zero()) throw error("division by zero");
  switch (kind_) {
    case FieldKind::rational:
      return Scalar(self(), Rational(1) / a.rational());
    case FieldKind::prime:
      return Scalar(self(), FfCoeffs{mod_inv(a.coeffs()[0], p_)});
    case FieldKind::extension: {
      Fp c(a.coeffs().begin(), a.coeffs().end());
      Fp m(modulus_.begin(), modulus_.end());
      Fp r = fp_inv_mod(std::move(c), std::move(m), p_);
      FfCoeffs out(degree_, 0);
      for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
      return Scalar(self(), std::move(out));
    }
  }
  throw error("corrupt field kind");
}

Scalar FieldSpec::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar FieldSpec::pow(const Scalar& a, std::int64_t e) const {
  check_mine(a);
  if (e < 0) return pow(inv(a), -e);
  Scalar acc = one();
  Scalar base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Scalar FieldSpec::parse_scalar(std::string_view text) const {
  std::string tok(text);
  if (tok.empty()) throw error("empty element literal");
  switch (kind_) {
    case FieldKind::prime:
      return from_int(parse_int(tok, "element"));
    case FieldKind::extension: {
      FfCoeffs c;
      std::string cur;
      for (char ch : tok + ",") {
        if (ch == ',') {
          if (cur.empty()) throw error("empty coefficient in '" + tok + "'");
          c.push_back(parse_int(cur, "coefficient"));
          cur.clear();
        } else {
          cur.push_back(ch);
        }
      }
      if (static_cast<int>(c.size()) != degree_ && c.size() != 1)
        throw error("element of GF(" + std::to_string(p_) + "^" + std::to_string(degree_) +
                    ") wants " + std::to_string(degree_) + " coefficients, got '" + tok + "'");
      return from_coeffs(std::move(c));
    }
    case FieldKind::rational: {
      auto slash = tok.find('/');
      if (slash == std::string::npos) return from_int(parse_int(tok, "element"));
      std::int64_t num = parse_int(tok.substr(0, slash), "numerator");
      std::int64_t den = parse_int(tok.substr(slash + 1), "denominator");
      if (den == 0) throw error("zero denominator in '" + tok + "'");
      return Scalar(self(), Rational(num, den));
    }
  }
  throw error("corrupt field kind");
}

std::string FieldSpec::format(const Scalar& a) const {
  check_mine(a);
  switch (kind_) {
    case FieldKind::prime:
      return std::to_string(a.coeffs()[0]);
    case FieldKind::extension: {
      std::string s;
      for (int i = 0; i < degree_; ++i) {
        if (i) s += ',';
        s += std::to_string(a.coeffs()[i]);
      }
      return s;
    }
    case FieldKind::rational: {
      std::ostringstream os;
      os << boost::multiprecision::numerator(a.rational()) << '/'
         << boost::multiprecision::denominator(a.rational());
      return os.str();
    }
  }
  throw error("corrupt field kind");
}

bool Scalar::is_zero() const {
  if (kind() == FieldKind::rational) return rat_ == 0;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](FfWord w) { return w == 0; });
}

bool Scalar::is_one() const { return *this == field_->one(); }

const FfCoeffs& Scalar::coeffs() const {
  if (kind() == FieldKind::rational) throw error("rational scalar has no coefficient vector");
  return coeffs_;
}

const Rational& Scalar::rational() const {
  if (kind() != FieldKind::rational) throw error("finite-field scalar has no rational value");
  return rat_;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!same_field(a, b)) throw error("comparing scalars from different fields");
  if (a.kind() == FieldKind::rational) return a.rat_ == b.rat_;
  return a.coeffs_ == b.coeffs_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (!same_field(a, b)) throw error("comparing scalars from different fields");
  if (a.kind() == FieldKind::rational) return a.rat_ < b.rat_;
  return std::lexicographical_compare(a.coeffs_.rbegin(), a.coeffs_.rend(),
                                      b.coeffs_.rbegin(), b.coeffs_.rend());
}

Field parse_field_descriptor(std::string_view descriptor) { return FieldSpec::parse(descriptor); }

}  // namespace slb
