#include <doctest.h>

#include "helpers.hpp"
#include "slbracket/oracle.hpp"
#include "slbracket/rng.hpp"
#include "slbracket/solver.hpp"

using namespace slb;
using testutil::mk;
using testutil::vk;

namespace {

// Shorthand: decomposition is correct against its instance.
void check_valid(const Mat& a, const Hyperplane& h, const Decomposition& d) {
  CHECK(commutator(d.first(), d.second()) == a);
  CHECK(h.contains(d.first()));
  CHECK(h.contains(d.second()));
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("enum names are stable") {
  CHECK(std::string(strategy_name(Strategy::special3)) == "special3");
  CHECK(std::string(strategy_name(Strategy::n2_line)) == "n2_line");
  CHECK(std::string(solve_status_name(SolveStatus::not_representable)) == "not_representable");
  CHECK(std::string(lld_mode_name(LldMode::rank_one_structure)) == "rank_one_structure");
}

TEST_CASE("Decomposition construction validates the certificate") {
  Field f = FieldSpec::prime(5);
  Mat a = Mat::unit(f, 3, 0, 2);
  Hyperplane h(Mat::unit(f, 3, 2, 0));
  Mat e12 = Mat::unit(f, 3, 0, 1), e23 = Mat::unit(f, 3, 1, 2);
  Decomposition d(a, h, e12, e23, Strategy::cyclic_search, 1, 0);
  CHECK(d.strategy() == Strategy::cyclic_search);
  CHECK(d.attempts() == 1);
  // wrong bracket and factors outside H are both rejected
  CHECK_THROWS_AS(Decomposition(a, h, e23, e12, Strategy::cyclic_search, 1, 0), error);
  CHECK_THROWS_AS(Decomposition(Mat::unit(f, 3, 0, 2), Hyperplane(Mat::unit(f, 3, 2, 1)), e12,
                                e23, Strategy::cyclic_search, 1, 0),
                  error);
}

TEST_CASE("try_cyclic_witness lands a solution when the centralizer escapes") {
  Field f = FieldSpec::prime(5);
  Mat j3 = Mat::jordan(f, 3);
  Mat a = Mat::unit(f, 3, 0, 2);
  Hyperplane h(Mat::unit(f, 3, 2, 0));

  auto r = try_cyclic_witness(a, h, j3);
  REQUIRE(r.decomposition.has_value());
  CHECK(r.decomposition->first() == j3);
  check_valid(a, h, *r.decomposition);
  // E_{2,3} is itself a landed solution; ours may differ by a centralizer shift
  CHECK(commutator(j3, Mat::unit(f, 3, 1, 2)) == a);
  CHECK(h.contains(Mat::unit(f, 3, 1, 2)));

  // A outside im(ad_M): tr(J^2 E_{3,1}) = 1
  auto miss = try_cyclic_witness(Mat::unit(f, 3, 2, 0), h, j3);
  CHECK_FALSE(miss.decomposition.has_value());
  CHECK_FALSE(miss.centralizer_contained);

  // char 3, B = I: all of I, J, J^2 have zero trace, so nothing escapes
  Field f9 = FieldSpec::extension(3, 2);
  Mat j9 = Mat::jordan(f9, 3);
  Hyperplane h9(Mat::identity(f9, 3));
  auto stuck = try_cyclic_witness(Mat::unit(f9, 3, 0, 2), h9, j9);
  CHECK_FALSE(stuck.decomposition.has_value());
  CHECK(stuck.centralizer_contained);

  // witness outside H is a caller bug
  CHECK_THROWS_AS(try_cyclic_witness(a, Hyperplane(Mat::unit(f, 3, 1, 0)), j3), error);
}

TEST_CASE("strict upper witness follows the explicit formula") {
  Field f = FieldSpec::prime(5);
  Mat a = mk(f, {{1, 2, 0}, {0, 3, 1}, {0, 0, 1}});  // upper, trace zero

  // B = E_{3,1}: deepest low entry (3,1), subdiagonal of B vanishes, beta = 0
  Hyperplane h1(Mat::unit(f, 3, 2, 0));
  std::vector<Scalar> x11 = {f->one(), f->one()};
  Mat m1 = construct_strict_upper_witness(a, h1, x11);
  CHECK(m1 == Mat::unit(f, 3, 0, 1) + Mat::unit(f, 3, 1, 2));

  // B = E_{2,1} + E_{3,1}: same landing entry, beta = x_1 * b_{2,1} = 1
  Hyperplane h2(Mat::unit(f, 3, 1, 0) + Mat::unit(f, 3, 2, 0));
  std::vector<Scalar> x12 = {f->one(), f->from_int(2)};
  Mat m2 = construct_strict_upper_witness(a, h2, x12);
  CHECK(m2 == mk(f, {{0, 1, -1}, {0, 0, 2}, {0, 0, 0}}));

  for (auto [h, m] : {std::pair{&h1, &m1}, std::pair{&h2, &m2}}) {
    CHECK(h->contains(*m));
    CHECK(rank(*m) == 2);
    CHECK(mat_pow(*m, 3).is_zero());
    CHECK(in_image_ad(*m, a));
  }

  // preconditions: Hessenberg normals have no landing entry, x must be nonzero
  CHECK_THROWS_AS(construct_strict_upper_witness(a, Hyperplane(Mat::jordan(f, 3)), x11), error);
  std::vector<Scalar> bad = {f->one(), f->zero()};
  CHECK_THROWS_AS(construct_strict_upper_witness(a, h1, bad), error);
  CHECK_THROWS_AS(construct_strict_upper_witness(mk(f, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}), h1, x11),
                  error);
}

TEST_CASE("hessenberg witness cancels the second subdiagonal") {
  Field f = FieldSpec::prime(5);
  // Hessenberg, a_{21} = 1, second subdiagonal entry 2, trace zero
  Mat a = mk(f, {{1, 2, 3}, {1, 3, 0}, {0, 2, 1}});
  Hyperplane h(Mat::unit(f, 3, 2, 0) + Mat::unit(f, 3, 1, 0));

  std::vector<Scalar> x = {f->from_int(3)};
  auto m = construct_hessenberg_witness(a, h, 2, x);
  REQUIRE(m.has_value());
  // alpha = a_{32} x_1 = 2*3 = 1
  CHECK(m->at(0, 1) == f->from_int(-1));
  CHECK(m->at(1, 2) == f->from_int(3));
  CHECK(h.contains(*m));
  CHECK(rank(*m) == 2);
  CHECK(mat_pow(*m, 3).is_zero());
  CHECK(in_image_ad(*m, a));

  // a_{32} = 0 forces alpha = 0 for every x, so no witness of this shape
  Mat flat = mk(f, {{1, 2, 3}, {1, 3, 0}, {0, 0, 1}});
  CHECK_FALSE(construct_hessenberg_witness(flat, h, 2, x).has_value());

  Mat unscaled = mk(f, {{1, 2, 3}, {2, 3, 0}, {0, 2, 1}});
  CHECK_THROWS_AS(construct_hessenberg_witness(unscaled, h, 2, x), error);
  Hyperplane miss(Mat::unit(f, 3, 1, 0));  // row 2 of the normal has zero first entry
  CHECK_THROWS_AS(construct_hessenberg_witness(a, miss, 2, x), error);
}

TEST_CASE("local linear dependence detector") {
  Field f = FieldSpec::prime(5);

  // rank-one structure: A = E_{1,2}, B = E_{1,3} share the image line K e_1
  auto r1 = detect_lld(Mat::unit(f, 3, 0, 1), Mat::unit(f, 3, 0, 2));
  CHECK(r1.is_lld);
  CHECK(r1.mode == LldMode::rank_one_structure);
  CHECK(r1.lambda == f->zero());
  CHECK(r1.mu == f->zero());
  REQUIRE(r1.direction.has_value());
  std::vector<Vec> dir = {*r1.direction, Vec::unit(f, 3, 0)};
  CHECK(rank_of_vectors(dir) == 1);

  // J and J^2: x = e3 already has (x, Jx, J^2x) of rank 3
  Mat j3 = Mat::jordan(f, 3);
  auto r2 = detect_lld(j3, j3 * j3);
  CHECK_FALSE(r2.is_lld);
  CHECK(r2.mode == LldMode::none);

  // B in the span of I and A
  Rng rng(7);
  Mat a = rng.matrix(f, 3);
  Mat b = a.scaled(f->from_int(2)) + Mat::scalar(f, 3, f->from_int(3));
  auto r3 = detect_lld(a, b);
  CHECK(r3.is_lld);
  CHECK(r3.mode == LldMode::linearly_dependent_triple);
}

TEST_CASE("special 3x3 shape detection") {
  Field f9 = FieldSpec::extension(3, 2);
  Mat a = Mat::identity(f9, 3);
  a.at(1, 2) = f9->one();
  CHECK(detect_special3_shape(a) == f9->one());

  Field f5 = FieldSpec::prime(5);
  CHECK(detect_special3_shape(Mat::unit(f5, 3, 0, 2)) == f5->zero());
  CHECK_FALSE(detect_special3_shape(Mat::jordan(f5, 3)).has_value());  // rank 2
  Mat d = Mat::diagonal({f5->one(), f5->from_int(2), f5->from_int(2)});
  CHECK_FALSE(detect_special3_shape(d).has_value());
}

TEST_CASE("special3 handles the fully reduced char-3 instance with the documented witness") {
  Field f = FieldSpec::extension(3, 2);
  Mat a = Mat::identity(f, 3);
  a.at(1, 2) = f->one();
  Hyperplane h(Mat::unit(f, 3, 0, 2));

  auto d = special3_decompose(a, h);
  REQUIRE(d.has_value());
  check_valid(a, h, *d);
  // the witness is C = E_{2,1} + E_{3,2} - E_{3,3}
  Mat c3 = mk(f, {{0, 0, 0}, {1, 0, 0}, {0, 1, -1}});
  CHECK(d->first() == c3);
  CHECK(d->strategy() == Strategy::special3);
}

TEST_CASE("the char-3 trace identities behind the special3 candidates") {
  Field f = FieldSpec::extension(3, 2);
  Mat a = Mat::identity(f, 3);
  a.at(1, 2) = f->one();

  for (const Scalar& av : f->elements())
    for (const Scalar& dv : f->elements())
      for (const Scalar& ev : f->elements()) {
        // B in the reduced shape: rows ((a,0,d), (1,-a,e), (0,0,0))
        Mat b(f, 3);
        b.at(0, 0) = av;
        b.at(0, 2) = dv;
        b.at(1, 0) = f->one();
        b.at(1, 1) = -av;
        b.at(1, 2) = ev;
        for (const Scalar& al : f->elements())
          for (const Scalar& be : f->elements()) {
            Mat c(f, 3);
            c.at(0, 1) = f->one();
            c.at(1, 0) = al;
            c.at(1, 2) = f->one();
            c.at(2, 0) = be;
            Mat c2 = c * c;
            CHECK(trace_form(a, c).is_zero());
            CHECK(trace_form(a, c2) == f->from_int(2) * al + be);
            CHECK(trace_form(a, c2) == be - al);  // same thing in characteristic 3
            CHECK(trace_form(b, c) == be * dv + f->one());
            CHECK(trace_form(b, c2) == ev * be);
            if (!dv.is_zero() && be == -f->inv(dv) && al == be) {
              CHECK(trace_form(b, c).is_zero());  // the landing choice used in stage S3
            }
          }
      }
}

TEST_CASE("the two terminal special3 witnesses work where the scan stalls") {
  Field f = FieldSpec::extension(3, 2);

  // first terminal case: A' = I + E_{3,1}, B' = E_{3,2}
  Mat a1 = mk(f, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}});
  Mat b1 = Mat::unit(f, 3, 2, 1);
  Mat c2 = mk(f, {{1, 0, 1}, {1, 1, 0}, {0, 1, 0}});
  CHECK(c2 * c2 == mk(f, {{1, 1, 1}, {-1, 1, 1}, {1, 1, 0}}));
  CHECK(trace_form(b1, c2).is_zero());
  CHECK(trace_form(b1, c2 * c2).is_one());
  CHECK(is_cyclic(c2));
  CHECK(in_image_ad(c2, a1));

  // second terminal case: A = I + E_{2,3}, B = E_{1,3}
  Mat a2 = Mat::identity(f, 3);
  a2.at(1, 2) = f->one();
  Mat b2 = Mat::unit(f, 3, 0, 2);
  Mat c3 = mk(f, {{0, 0, 0}, {1, 0, 0}, {0, 1, -1}});
  CHECK(c3 * c3 == mk(f, {{0, 0, 0}, {0, 0, 0}, {1, -1, 1}}));
  CHECK(trace_form(a2, c3).is_zero());
  CHECK(trace_form(a2, c3 * c3).is_zero());
  CHECK(trace_form(b2, c3).is_zero());
  CHECK(trace_form(b2, c3 * c3).is_one());
  CHECK(is_cyclic(c3));
  CHECK(in_image_ad(c3, a2));
}

TEST_CASE("special3 with nilpotent shape and upper-triangular normal") {
  Field f9 = FieldSpec::extension(3, 2);
  Mat a = Mat::unit(f9, 3, 0, 2);
  Mat b = mk(f9, {{1, 2, 1}, {0, 2, 0}, {0, 0, 0}});  // upper-triangular, trace zero
  Hyperplane h(b);
  auto d = special3_decompose(a, h);
  REQUIRE(d.has_value());
  check_valid(a, h, *d);
  // the canonical pair (E_{1,2}, E_{2,3}) qualifies for every upper-triangular B
  CHECK(commutator(Mat::unit(f9, 3, 0, 1), Mat::unit(f9, 3, 1, 2)) == a);
  CHECK(h.contains(Mat::unit(f9, 3, 0, 1)));
  CHECK(h.contains(Mat::unit(f9, 3, 1, 2)));
}

TEST_CASE("thompson decomposition writes trace-zero matrices as brackets of such") {
  Field f = FieldSpec::prime(5);
  for (Mat a : {Mat::diagonal({f->one(), f->from_int(-1), f->zero()}), Mat::jordan(f, 3),
                Mat::zero(f, 3)}) {
    auto d = thompson_decompose(a);
    REQUIRE(d.has_value());
    CHECK(commutator(d->first(), d->second()) == a);
    CHECK(d->first().trace().is_zero());
    CHECK(d->second().trace().is_zero());
  }

  // scalar matrices are only trace-zero when the characteristic divides n
  Field f3 = FieldSpec::prime(3);
  auto d = thompson_decompose(Mat::identity(f3, 3));
  REQUIRE(d.has_value());
  CHECK(commutator(d->first(), d->second()) == Mat::identity(f3, 3));
  CHECK(d->first().trace().is_zero());
  CHECK(d->second().trace().is_zero());
}

TEST_CASE("analyze_n2 separates the line case from the full case") {
  Field f5 = FieldSpec::prime(5);
  auto open = analyze_n2(Hyperplane(Mat::identity(f5, 2)));
  CHECK_FALSE(open.identity_in_hyperplane);
  CHECK_FALSE(open.generator.has_value());

  Field f4 = FieldSpec::extension(2, 2);
  auto line = analyze_n2(Hyperplane(Mat::unit(f4, 2, 0, 1)));
  CHECK(line.identity_in_hyperplane);
  REQUIRE(line.generator.has_value());
  CHECK(*line.generator == Mat::unit(f4, 2, 0, 1));

  // the generator direction does not depend on the basis completion
  REQUIRE(line.basis_a.has_value());
  Hyperplane h(Mat::unit(f4, 2, 0, 1));
  auto basis = hyperplane_basis(h);
  Mat alt_a = *line.basis_a + *line.basis_b;  // another completion of {I}
  Mat gen2 = commutator(alt_a, *line.basis_b);
  std::vector<Mat> linev = {*line.generator};
  CHECK(in_span(linev, gen2));
}

TEST_CASE("cyclic_search respects its budget and seed") {
  Field f = FieldSpec::prime(5);
  Rng rng(8);
  Mat a = rng.nonzero_trace_zero_matrix(f, 3);
  Mat b = rng.nonzero_trace_zero_matrix(f, 3);
  Hyperplane h(b);

  CHECK_FALSE(cyclic_search(a, h, 0, 1).has_value());

  auto d1 = cyclic_search(a, h, 10000, 42);
  auto d2 = cyclic_search(a, h, 10000, 42);
  REQUIRE(d1.has_value());
  REQUIRE(d2.has_value());
  CHECK(d1->first() == d2->first());
  CHECK(d1->second() == d2->second());
  check_valid(a, h, *d1);
}

TEST_CASE("decompose: trivial and easy-shift stages") {
  Field f = FieldSpec::prime(5);
  Hyperplane h(Mat::identity(f, 3) + Mat::unit(f, 3, 0, 1));

  auto z = decompose(Mat::zero(f, 3), h);
  CHECK(z.status == SolveStatus::decomposed);
  CHECK(z.decomposition->strategy() == Strategy::trivial);
  CHECK(z.decomposition->first().is_zero());

  Rng rng(9);
  Mat a = rng.nonzero_trace_zero_matrix(f, 3);
  auto out = decompose(a, h);
  REQUIRE(out.status == SolveStatus::decomposed);
  CHECK(out.decomposition->strategy() == Strategy::easy_shift);
  check_valid(a, h, *out.decomposition);
}

TEST_CASE("decompose: the reduced char-3 instance goes through stage S3") {
  Field f = FieldSpec::extension(3, 2);
  Mat a = Mat::identity(f, 3);
  a.at(1, 2) = f->one();
  Hyperplane h(Mat::unit(f, 3, 0, 2));
  auto out = decompose(a, h);
  REQUIRE(out.status == SolveStatus::decomposed);
  CHECK(out.decomposition->strategy() == Strategy::special3);
  check_valid(a, h, *out.decomposition);
}

TEST_CASE("decompose: 2x2 obstructions are certified") {
  Field f2 = FieldSpec::prime(2);
  Hyperplane h(Mat::identity(f2, 2));
  auto out = decompose(Mat::unit(f2, 2, 0, 1), h);
  CHECK(out.status == SolveStatus::not_representable);
  REQUIRE(out.obstruction.has_value());
  // brackets of H fill the line through the obstruction generator
  auto rep = enumerate_bracket_set(h);
  CHECK(rep.span_dimension == 1);

  // representable 2x2 instance on the generator line
  Field f4 = FieldSpec::extension(2, 2);
  Hyperplane h4(Mat::unit(f4, 2, 0, 1));
  auto hit = decompose(Mat::unit(f4, 2, 0, 1), h4);
  REQUIRE(hit.status == SolveStatus::decomposed);
  CHECK(hit.decomposition->strategy() == Strategy::n2_line);
  check_valid(Mat::unit(f4, 2, 0, 1), h4, *hit.decomposition);
}

TEST_CASE("decompose is deterministic for a fixed seed") {
  Field f = FieldSpec::extension(2, 2);
  Rng rng(10);
  Mat a = rng.nonzero_trace_zero_matrix(f, 3);
  Mat b = rng.nonzero_trace_zero_matrix(f, 3);
  Hyperplane h(b);
  DecomposeOptions opt;
  opt.seed = 77;
  auto o1 = decompose(a, h, opt);
  auto o2 = decompose(a, h, opt);
  REQUIRE(o1.status == SolveStatus::decomposed);
  REQUIRE(o2.status == SolveStatus::decomposed);
  CHECK(o1.decomposition->first() == o2.decomposition->first());
  CHECK(o1.decomposition->second() == o2.decomposition->second());
  CHECK(o1.decomposition->strategy() == o2.decomposition->strategy());
}

TEST_CASE("the exhaustive stage alone settles tiny instances") {
  // [E_{1,3}, E_{3,2}] = E_{1,2} with both factors avoiding the (1,2) slot,
  // so this GF(2) instance is representable and the full sweep must find it.
  Field f = FieldSpec::prime(2);
  Mat a = Mat::unit(f, 3, 0, 1);
  Hyperplane h(Mat::unit(f, 3, 1, 0));
  DecomposeOptions opt;
  opt.strategy_mask = 1u << static_cast<unsigned>(Strategy::exhaustive);
  auto out = decompose(a, h, opt);
  REQUIRE(out.status == SolveStatus::decomposed);
  CHECK(out.decomposition->strategy() == Strategy::exhaustive);
  check_valid(a, h, *out.decomposition);
}

TEST_CASE("non-trace-zero targets are rejected") {
  Field f = FieldSpec::prime(5);
  Hyperplane h(Mat::identity(f, 3));
  CHECK_THROWS_AS(decompose(Mat::unit(f, 3, 0, 0), h), error);
}

}  // TEST_SUITE
