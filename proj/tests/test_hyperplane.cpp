#include <doctest.h>

#include "helpers.hpp"
#include "slbracket/hyperplane.hpp"
#include "slbracket/rng.hpp"

using namespace slb;
using testutil::mk;

TEST_SUITE("hyperplane") {

TEST_CASE("identity membership depends on tr B and the characteristic") {
  Field f5 = FieldSpec::prime(5);
  CHECK_FALSE(Hyperplane(Mat::identity(f5, 3)).contains_identity());

  Field f9 = FieldSpec::extension(3, 2);
  CHECK(Hyperplane(Mat::identity(f9, 3)).contains_identity());  // tr I = 3 = 0

  CHECK(Hyperplane(Mat::unit(f5, 3, 0, 1)).contains_identity());
  CHECK_THROWS_AS(Hyperplane(Mat::zero(f5, 3)), error);
}

TEST_CASE("membership reads one bilinear condition") {
  Field f = FieldSpec::prime(5);
  // B = E_{3,1}: tr(BM) = M_{1,3}, so H is "upper right corner zero"
  Hyperplane h(Mat::unit(f, 3, 2, 0));
  CHECK(h.contains(Mat::unit(f, 3, 0, 1)));
  CHECK_FALSE(h.contains(Mat::unit(f, 3, 0, 2)));
  CHECK(h.contains(Mat::identity(f, 3)));
  CHECK(h.dim() == 3);
}

TEST_CASE("land_on slides along an escaping direction") {
  Field f = FieldSpec::prime(5);
  Hyperplane h(Mat::unit(f, 3, 0, 0));
  Mat x = Mat::identity(f, 3);
  Mat c = Mat::unit(f, 3, 0, 0);
  CHECK(h.land_on(x, c) == x - c);

  // X already inside stays put.
  Mat inside = Mat::unit(f, 3, 1, 1);
  CHECK(h.land_on(inside, c) == inside);

  Hyperplane h2(Mat::identity(f, 2));
  Mat landed = h2.land_on(Mat::unit(f, 2, 0, 0), Mat::identity(f, 2));
  CHECK(landed == Mat::unit(f, 2, 0, 0) + Mat::scalar(f, 2, f->from_int(2)));
  CHECK(h2.contains(landed));

  CHECK_THROWS_AS(h2.land_on(Mat::identity(f, 2), Mat::unit(f, 2, 0, 1)), error);
}

TEST_CASE("shift_normal subtracts a multiple of the target") {
  Field f = FieldSpec::prime(5);
  Mat a = mk(f, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  Mat b = a + Mat::unit(f, 3, 0, 1);
  Hyperplane h(b);
  CHECK(h.shift_normal(a, f->zero()).normal() == b);
  CHECK(h.shift_normal(a, f->one()).normal() == Mat::unit(f, 3, 0, 1));
  CHECK_THROWS_AS(h.shift_normal(b, f->one()), error);  // zero normal
}

TEST_CASE("conjugation transports membership") {
  Field f = FieldSpec::prime(5);
  Hyperplane h(Mat::unit(f, 3, 2, 0));
  CHECK(h.conjugated_by(Mat::identity(f, 3)).same_hyperplane(h));

  // Swapping e1 and e2 moves the normal E_{3,1} to E_{3,2}.
  Mat swap = mk(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  CHECK(h.conjugated_by(swap).normal() == Mat::unit(f, 3, 2, 1));

  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    Mat p = rng.invertible_matrix(f, 3);
    Mat m = rng.matrix(f, 3);
    Hyperplane moved = h.conjugated_by(p);
    CHECK(moved.contains(m) == h.contains(p * m * inverse(p)));
  }
}

TEST_CASE("scalar_adjust_pair places both factors without moving the bracket") {
  Field f = FieldSpec::prime(5);
  Hyperplane h(Mat::identity(f, 3));
  Mat a1 = Mat::unit(f, 3, 0, 0);
  Mat a2 = Mat::unit(f, 3, 0, 1);
  auto [b1, b2] = h.scalar_adjust_pair(a1, a2);
  CHECK(b1 == a1 + Mat::scalar(f, 3, f->from_int(3)));
  CHECK(h.contains(b1));
  CHECK(h.contains(b2));
  CHECK(commutator(b1, b2) == commutator(a1, a2));

  Hyperplane inside(Mat::unit(f, 2, 0, 1));
  CHECK_THROWS_AS(inside.scalar_adjust_pair(Mat::identity(f, 2), Mat::identity(f, 2)), error);
}

TEST_CASE("hyperplane_basis spans exactly the hyperplane") {
  Field f = FieldSpec::extension(2, 2);
  Hyperplane h(mk(f, {{1, 0, 1}, {0, 1, 0}, {1, 1, 0}}));
  auto basis = hyperplane_basis(h);
  REQUIRE(basis.size() == 8);
  std::vector<Vec> flat;
  for (const Mat& m : basis) {
    CHECK(h.contains(m));
    std::vector<Scalar> entries;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) entries.push_back(m.at(i, j));
    flat.emplace_back(f, entries);
  }
  CHECK(rank_of_vectors(flat) == 8);
}

TEST_CASE("same_hyperplane ignores scaling of the normal") {
  Field f = FieldSpec::prime(5);
  Mat b = mk(f, {{1, 2}, {3, 4}});
  CHECK(Hyperplane(b).same_hyperplane(Hyperplane(b.scaled(f->from_int(2)))));
  CHECK_FALSE(Hyperplane(b).same_hyperplane(Hyperplane(Mat::unit(f, 2, 0, 0))));
}

}  // TEST_SUITE
