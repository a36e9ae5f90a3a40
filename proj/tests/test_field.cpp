#include <doctest.h>

#include "slbracket/field.hpp"

using namespace slb;

TEST_SUITE("field") {

TEST_CASE("descriptor parsing accepts the documented grammar") {
  CHECK(FieldSpec::parse("gf 5")->order() == 5);
  CHECK(FieldSpec::parse("gf5")->order() == 5);  // glued form
  CHECK(FieldSpec::parse("q")->kind() == FieldKind::rational);

  Field f4 = FieldSpec::parse("gf 2 2");
  CHECK(f4->order() == 4);
  CHECK(f4->modulus() == std::vector<FfWord>{1, 1, 1});  // t^2 + t + 1 forced

  Field f9 = FieldSpec::parse("gf 3 2");
  CHECK(f9->order() == 9);
  CHECK(f9->modulus() == std::vector<FfWord>{1, 0, 1});  // t^2 + 1 is the default pick

  // A bare prime power resolves to the unique (p, k).
  Field alt = FieldSpec::parse("gf 4");
  CHECK(alt->characteristic() == 2);
  CHECK(alt->degree() == 2);
  CHECK(alt->same_field(*f4));

  Field expl = FieldSpec::parse("gf 2 2 1,1,1");
  CHECK(expl->same_field(*f4));
}

TEST_CASE("descriptor parsing rejects junk") {
  CHECK_THROWS_AS(FieldSpec::parse(""), error);
  CHECK_THROWS_AS(FieldSpec::parse("gf"), error);
  CHECK_THROWS_AS(FieldSpec::parse("gf 6"), error);          // 6 = 2*3 is no prime power
  CHECK_THROWS_AS(FieldSpec::parse("gf 2 2 1,0,1"), error);  // t^2 + 1 = (t+1)^2 over GF(2)
  CHECK_THROWS_AS(FieldSpec::parse("q extra"), error);
  CHECK_THROWS_AS(FieldSpec::parse("zf 5"), error);
  CHECK_THROWS_AS(FieldSpec::prime(9), error);
  CHECK_THROWS_AS(FieldSpec::extension(4, 2), error);
  CHECK_THROWS_AS(FieldSpec::extension(2, 0), error);
}

TEST_CASE("descriptors round-trip through parse") {
  for (const char* d : {"gf 5", "gf 2 2 1,1,1", "gf 3 2 1,0,1", "q"}) {
    Field f = FieldSpec::parse(d);
    CHECK(f->descriptor() == d);
    CHECK(FieldSpec::parse(f->descriptor())->same_field(*f));
  }
}

TEST_CASE("field axioms hold exhaustively on small orders") {
  std::vector<Field> fields = {
      FieldSpec::prime(2),        FieldSpec::prime(3),        FieldSpec::prime(5),
      FieldSpec::extension(2, 2), FieldSpec::extension(3, 2), FieldSpec::extension(2, 3),
  };
  for (const Field& f : fields) {
    auto es = f->elements();
    REQUIRE(static_cast<std::int64_t>(es.size()) == f->order());
    Scalar zero = f->zero(), one = f->one();
    for (const Scalar& a : es) {
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a + (-a) == zero);
      CHECK(a * zero == zero);
      if (!a.is_zero()) {
        CHECK(a * f->inv(a) == one);
        CHECK(f->pow(a, f->order() - 1) == one);
      }
      for (const Scalar& b : es) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (const Scalar& c : es) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    }
  }
}

TEST_CASE("arithmetic matches hand values") {
  Field f5 = FieldSpec::prime(5);
  CHECK(f5->from_int(3) * f5->from_int(4) == f5->from_int(2));
  CHECK(f5->inv(f5->from_int(2)) == f5->from_int(3));
  CHECK(f5->from_int(-1) == f5->from_int(4));

  Field f4 = FieldSpec::extension(2, 2);
  Scalar t = f4->element(2);  // coefficient vector (0, 1)
  CHECK(t * (t + f4->one()) == f4->one());
  CHECK(f4->inv(t) == t + f4->one());

  Field f9 = FieldSpec::extension(3, 2);
  Scalar u = f9->element(3);  // base-3 digits (0, 1), the adjoined root
  CHECK(u * u == f9->from_int(2));  // modulus t^2 + 1

  Field q = FieldSpec::rationals();
  Scalar two_thirds = q->from_rational(Rational(2, 3));
  CHECK(q->inv(two_thirds) == q->from_rational(Rational(3, 2)));
  CHECK(q->from_rational(Rational(1, 2)) + q->from_rational(Rational(1, 3)) ==
        q->from_rational(Rational(5, 6)));
}

TEST_CASE("element enumeration is a bijection with indices") {
  for (const Field& f : {FieldSpec::prime(7), FieldSpec::extension(2, 2)}) {
    CHECK(f->element(0).is_zero());
    CHECK(f->element(1).is_one());
    auto es = f->elements();
    for (std::int64_t i = 0; i < f->order(); ++i) {
      CHECK(f->index_of(es[i]) == i);
      CHECK(f->element(i) == es[i]);
    }
  }
}

TEST_CASE("scalar literals round-trip through format and parse") {
  Field f9 = FieldSpec::extension(3, 2);
  for (const Scalar& a : f9->elements()) {
    CHECK(f9->parse_scalar(f9->format(a)) == a);
  }
  Field q = FieldSpec::rationals();
  for (auto r : {Rational(-7, 3), Rational(0), Rational(12, 1)}) {
    Scalar a = q->from_rational(r);
    CHECK(q->parse_scalar(q->format(a)) == a);
  }
  Field f5 = FieldSpec::prime(5);
  CHECK(f5->parse_scalar("4") == f5->from_int(-1));
  CHECK_THROWS_AS(f5->parse_scalar("x"), error);
}

TEST_CASE("from_coeffs reduces modulo the characteristic") {
  Field f4 = FieldSpec::extension(2, 2);
  CHECK(f4->from_coeffs({2, 3}) == f4->element(2));
  CHECK(f4->from_coeffs({}) == f4->zero());
  CHECK_THROWS_AS(f4->from_coeffs({1, 1, 1}), error);  // three coefficients in degree 2
}

TEST_CASE("cross-field arithmetic is an error, not a silent coercion") {
  Field f4 = FieldSpec::extension(2, 2);
  Field f9 = FieldSpec::extension(3, 2);
  CHECK_THROWS_AS((void)(f4->one() + f9->one()), error);
  CHECK_THROWS_AS((void)(f4->one() == f9->one()), error);
}

TEST_CASE("division by zero and oversized orders are rejected") {
  Field f5 = FieldSpec::prime(5);
  CHECK_THROWS_AS(f5->inv(f5->zero()), error);
  CHECK_THROWS_AS((void)(f5->one() / f5->zero()), error);
  CHECK_THROWS_AS(FieldSpec::extension(2, 30), error);  // 2^30 past the order cap
  CHECK_THROWS_AS(FieldSpec::rationals()->order(), error);
  CHECK_THROWS_AS(FieldSpec::rationals()->elements(), error);
}

}  // TEST_SUITE
