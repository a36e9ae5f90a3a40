#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "slbracket/hyperplane.hpp"

namespace slb {

// How a decomposition was found.  The pipeline tags below S0..S5 plus two
// bookkeeping values: `trivial` for A = 0 and `n2_line` for the exact 2x2
// structure argument.
enum class Strategy {
  trivial,
  easy_shift,          // S0: identity outside H, shift any commutator pair in
  lld_span,            // S1: B in span(I, A); trace-zero pair works as is
  hessenberg_witness,  // S2: chain-conjugated Hessenberg construction
  triangular_witness,  // S2: strict upper witness after triangularisation
  special3,            // S3: 3x3 shape lambda*I + E_{23}
  cyclic_search,       // S4: randomized witness hunt
  exhaustive,          // S5: full sweep over the hyperplane
  n2_line,             // 2x2 with identity inside H: bracket line membership
};
const char* strategy_name(Strategy s);

// A verified pair (A1, A2) in H x H with [A1, A2] = A.  The constructor
// re-checks all three equations and refuses to build an invalid object, so a
// Decomposition in hand is always a certificate.
class Decomposition {
 public:
  Decomposition(const Mat& a, const Hyperplane& h, Mat a1, Mat a2, Strategy strategy,
                long attempts, std::uint64_t seed);

  const Mat& first() const { return a1_; }
  const Mat& second() const { return a2_; }
  Strategy strategy() const { return strategy_; }
  long attempts() const { return attempts_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Mat a1_, a2_;
  Strategy strategy_;
  long attempts_;
  std::uint64_t seed_;
};

enum class SolveStatus { decomposed, not_representable, exhausted };
const char* solve_status_name(SolveStatus s);

struct SolveOutcome {
  SolveStatus status;
  std::optional<Decomposition> decomposition;  // set iff decomposed
  // For the 2x2 not-representable case: a generator of the bracket line that
  // A fails to lie on.
  std::optional<Mat> obstruction;
};

struct DecomposeOptions {
  long budget = 100000;    // candidate witnesses the randomized stages may try
  std::uint64_t seed = 0;
  // Bit i enables the strategy with enum value i; `trivial` is always on.
  unsigned strategy_mask = ~0u;
};

bool strategy_enabled(const DecomposeOptions& opt, Strategy s);

// Main entry point: decompose trace-zero A as a commutator of two elements
// of H.  Strategies run in the fixed order S0, S1, S2, S3, S4, S5; the 2x2
// case is decided exactly up front.  `exhausted` can only come back below
// the guaranteed regime (finite field with at most three elements and the
// identity inside H, or the rationals once sampling gives up).
SolveOutcome decompose(const Mat& a, const Hyperplane& h, const DecomposeOptions& opt = {});
SolveOutcome decompose(const Mat& a, const Hyperplane& h, long budget, std::uint64_t seed = 0);

struct TryWitness {
  std::optional<Decomposition> decomposition;
  // True when the attempt failed because every centraliser element of M lies
  // inside H, so no landing direction exists.
  bool centralizer_contained = false;
};

// One witness attempt: M must lie in H.  If A is in im(ad_M) and some
// centraliser basis element C of M escapes H, solve MX - XM = A and land the
// solution on H along C (first escaping basis element in deterministic
// order).  tag/attempts/seed are recorded on the resulting Decomposition.
TryWitness try_cyclic_witness(const Mat& a, const Hyperplane& h, const Mat& m,
                              Strategy tag = Strategy::cyclic_search, long attempts = 1,
                              std::uint64_t seed = 0);

// Witness of the strict-upper-triangular construction: A upper triangular
// with trace zero, B = normal of H not Hessenberg, x a vector of n-1 nonzero
// scalars.  Picks the entry (l, l') of B below the subdiagonal maximising
// l - l' (ties: smallest l'), sets beta = sum_k B_{k+1,k} x_k / B_{l,l'} and
// returns M = sum_k x_k E_{k,k+1} - beta E_{l',l}: nilpotent of rank n-1,
// inside H, with A in im(ad_M).
Mat construct_strict_upper_witness(const Mat& a, const Hyperplane& h, std::span<const Scalar> x);

// Witness of the Hessenberg construction: A Hessenberg with A_{21} = 1 and
// trace zero, `row` a 0-based row index >= 2 with B_{row,0} != 0, x a vector
// of n-2 nonzero scalars.  With alpha = sum_k A_{k+2,k+1} x_k (empty when
// alpha = 0), beta chosen to cancel tr(MB), returns
// M = -alpha E_{12} + sum_k x_k E_{k+1,k+2} + beta E_{l',l}.
std::optional<Mat> construct_hessenberg_witness(const Mat& a, const Hyperplane& h, int row,
                                                std::span<const Scalar> x);

enum class LldMode { none, linearly_dependent_triple, rank_one_structure };
const char* lld_mode_name(LldMode m);

struct LldReport {
  bool is_lld = false;  // rank(x, Ax, Bx) <= 2 for every vector x
  LldMode mode = LldMode::none;
  std::optional<Scalar> lambda, mu;  // rank-one structure: A - lambda*I, B - mu*I
  std::optional<Vec> direction;      // shared one-dimensional image
};

// Local linear dependence of the triple (I, A, B).  Finite fields up to
// q^n <= 10^6 are decided by full vector sweep; otherwise a deterministic
// spanning family plus seeded samples can refute, and the structural
// classification (dependent triple, or both A - lambda*I and B - mu*I of
// rank one with the same image) decides the rest.
LldReport detect_lld(const Mat& a, const Mat& b);

// The scalar lambda with A = lambda*I + N, N of rank one and N^2 = 0, when A
// is 3x3 and of that similarity type (the shape the special S3 stage treats).
std::optional<Scalar> detect_special3_shape(const Mat& a);

// S3: deterministic witness candidates for the shape above, following the
// explicit 3x3 companion-style matrices and base changes that settle it.
std::optional<Decomposition> special3_decompose(const Mat& a, const Hyperplane& h);

// Trace-zero A as a commutator of two trace-zero matrices (n >= 3): first
// chain-conjugations hunting a Hessenberg form with vanishing subdiagonal
// sum against the nilpotent Jordan block, then the randomized and exhaustive
// stages against the hyperplane {M : tr M = 0}.  Empty only below the
// guaranteed regime.
std::optional<Decomposition> thompson_decompose(const Mat& a, long budget = 100000,
                                                std::uint64_t seed = 0);

struct N2Report {
  bool identity_in_hyperplane = false;
  // Basis (I, A, B) of H when the identity lies inside; the brackets of H
  // then fill the line spanned by generator = [A, B].
  std::optional<Mat> basis_a, basis_b;
  std::optional<Mat> generator;
};

// Exact structure of [H, H] for n = 2: a line when I is in H, all of sl_2
// otherwise.
N2Report analyze_n2(const Hyperplane& h);

// S4: seeded hunt over structured candidate families (conjugated Jordan
// blocks, random companions, witness constructions in random chain frames).
std::optional<Decomposition> cyclic_search(const Mat& a, const Hyperplane& h, long budget,
                                           std::uint64_t seed);

}  // namespace slb
