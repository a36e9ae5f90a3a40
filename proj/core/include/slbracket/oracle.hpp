#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slbracket/solver.hpp"

namespace slb {

enum class OracleMode { exhaustive, sampled };

// Brute-force reference, kept independent of the strategy pipeline: sweep
// candidate first factors M over H and decide each one by a single dense
// linear solve of the pair ([M, X] = A, tr(BX) = 0) in the entries of X.
// Exhaustive mode enumerates the whole hyperplane and therefore settles the
// instance for good; it needs q^(n^2-1) <= 10^6.  Sampled mode draws seeded
// hyperplane elements and can only answer "found" or "gave up".
std::optional<std::pair<Mat, Mat>> oracle_decompose(const Mat& a, const Hyperplane& h,
                                                    OracleMode mode = OracleMode::exhaustive,
                                                    long budget = 100000, std::uint64_t seed = 0);

struct VerifyResult {
  bool ok = false;
  std::string failure;  // names the first failing check; empty when ok
};

// Checks [A1, A2] = A and membership of both factors in H.  Field or
// dimension mismatches come back as failures, not exceptions, so the
// verifier can be pointed at arbitrary file pairs.
VerifyResult verify_decomposition(const Mat& a, const Hyperplane& h, const Mat& a1, const Mat& a2);

// The full commutator set {[M, N] : M, N in H} together with its linear
// span, for small finite hyperplanes (|H| is capped at 4096, which covers
// every 2x2 field of interest).
struct BracketSetReport {
  long hyperplane_size = 0;
  long set_size = 0;
  int span_dimension = 0;
  bool set_equals_span = false;  // the set already fills its span
};
BracketSetReport enumerate_bracket_set(const Hyperplane& h);

struct SweepConfig {
  Field field;
  int n = 3;
  long count = 100;
  std::uint64_t seed = 0;
  bool force_identity_in_h = false;  // draw trace-zero normals only
  long budget = 100000;
};

struct SweepFailure {
  long index;
  Mat a;
  Mat b;
  SolveStatus status;
};

struct SweepReport {
  SweepConfig config;
  long successes = 0;
  std::map<std::string, long> strategy_histogram;
  std::vector<SweepFailure> failures;
  long elapsed_ms = 0;
};

// Decompose `count` seeded random instances: instance i draws its matrices
// and runs the solver from derive_seed(config.seed, i), so any failure can
// be replayed in isolation.
SweepReport sweep(const SweepConfig& config);

}  // namespace slb
