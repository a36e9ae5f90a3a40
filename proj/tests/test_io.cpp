#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "helpers.hpp"
#include "slbracket/io.hpp"
#include "slbracket/rng.hpp"

using namespace slb;
using testutil::mk;

TEST_SUITE("io") {

TEST_CASE("matrices round-trip through text") {
  for (const char* desc : {"gf 5", "gf 2 2 1,1,1", "gf 3 2 1,0,1", "q"}) {
    Field f = FieldSpec::parse(desc);
    Rng rng(13);
    Mat m = rng.matrix(f, 3);
    std::ostringstream out;
    write_matrix(out, m);
    std::istringstream in(out.str());
    CHECK(read_matrix(in) == m);
  }
}

TEST_CASE("instances and pairs round-trip, keeping block order") {
  Field f = FieldSpec::extension(3, 2);
  Rng rng(14);
  Mat a = rng.matrix(f, 3), b = rng.nonzero_matrix(f, 3);

  std::ostringstream out;
  write_instance(out, a, b);
  std::istringstream in(out.str());
  Instance inst = read_instance(in);
  CHECK(inst.a == a);
  CHECK(inst.b == b);

  std::ostringstream pout;
  write_pair(pout, a, b);
  std::istringstream pin(pout.str());
  auto pair = read_pair(pin);
  CHECK(pair.first == a);
  CHECK(pair.second == b);
}

TEST_CASE("comments and blank lines are skipped anywhere") {
  std::istringstream in(
      "# instance dumped by hand\n"
      "\n"
      "gf 5\n"
      "  # dimension next\n"
      "2\n"
      "\n"
      "0 1\n"
      "# the normal\n"
      "0 0\n"
      "\n"
      "1 0\n"
      "0 4\n");
  Instance inst = read_instance(in);
  Field f = FieldSpec::prime(5);
  CHECK(inst.a == Mat::unit(f, 2, 0, 1));
  CHECK(inst.b == mk(f, {{1, 0}, {0, 4}}));
}

TEST_CASE("negative and rational literals parse") {
  std::istringstream in(
      "q\n"
      "2\n"
      "-1 2/3\n"
      "0 -7/2\n");
  Mat m = read_matrix(in);
  Field q = FieldSpec::rationals();
  CHECK(m.at(0, 0) == q->from_int(-1));
  CHECK(m.at(0, 1) == q->from_rational(Rational(2, 3)));
  CHECK(m.at(1, 1) == q->from_rational(Rational(-7, 2)));
}

TEST_CASE("parse failures carry 1-based line numbers") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_matrix(in);
    } catch (const parse_error& e) {
      return e.line();
    }
    return -1;
  };

  CHECK(line_of("gf 6\n2\n0 0\n0 0\n") == 1);
  CHECK(line_of("gf 5\nx\n0 0\n0 0\n") == 2);
  CHECK(line_of("gf 5\n2\n0 0 0\n0 0\n") == 3);
  CHECK(line_of("gf 5\n2\n0 0\n0 9x\n") == 4);
  CHECK(line_of("gf 5\n2\n0 0\n") == 4);      // premature end of input
  CHECK(line_of("gf 5\n0\n0 0\n0 0\n") == 2);  // dimension out of range
}

TEST_CASE("pairs demand matching fields and dimensions") {
  std::istringstream mixed(
      "gf 5\n2\n0 0\n0 0\n"
      "gf 7\n2\n0 0\n0 0\n");
  CHECK_THROWS_AS(read_pair(mixed), error);

  std::istringstream shrunk(
      "gf 5\n2\n0 0\n0 0\n"
      "gf 5\n3\n0 0 0\n0 0 0\n0 0 0\n");
  CHECK_THROWS_AS(read_pair(shrunk), error);
}

TEST_CASE("missing files are reported as errors") {
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.txt"), error);
}

TEST_CASE("sweep reports serialize to the documented JSON shape") {
  SweepConfig cfg;
  cfg.field = FieldSpec::extension(2, 2);
  cfg.n = 3;
  cfg.count = 12;
  cfg.seed = 21;
  SweepReport rep = sweep(cfg);

  auto j = nlohmann::json::parse(sweep_report_to_json(rep));
  for (const char* key :
       {"field", "n", "count", "successes", "strategy_histogram", "failures", "seed",
        "elapsed_ms"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["field"] == "gf 2 2 1,1,1");
  CHECK(j["n"] == 3);
  CHECK(j["count"] == 12);
  CHECK(j["successes"] == rep.successes);
  CHECK(j["seed"] == 21);
  CHECK(j["failures"].is_array());
  long total = 0;
  for (const auto& [name, cnt] : j["strategy_histogram"].items()) total += cnt.get<long>();
  CHECK(total == rep.successes);
}

}  // TEST_SUITE
