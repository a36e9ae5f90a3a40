#include "slbracket/oracle.hpp"

#include <chrono>
#include <set>

#include "slbracket/rng.hpp"

namespace slb {

namespace {

// One candidate, decided completely: solve [M, X] = A together with
// tr(BX) = 0 as a single linear system in the n^2 entries of X.
std::optional<Mat> joint_solve(const Mat& a, const Hyperplane& h, const Mat& m) {
  const Field& f = a.field();
  int n = a.dim();
  int nn = n * n;
  std::vector<Vec> fam;
  fam.reserve(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::unit(f, n, i, j);
      Mat g = commutator(m, e);
      Vec v(f, nn + 1);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v.at(r * n + c) = g.at(r, c);
      v.at(nn) = trace_form(h.normal(), e);
      fam.push_back(std::move(v));
    }
  Vec target(f, nn + 1);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) target.at(r * n + c) = a.at(r, c);
  auto coeff = solve_linear(fam, target);
  if (!coeff) return std::nullopt;
  Mat x(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x.at(i, j) = (*coeff)[static_cast<std::size_t>(i) * n + j];
  return x;
}

// tr(M^k A) for k < n must vanish whenever A is a bracket with M; powers of
// M commute with M.  Cheap skip for the enumeration loops.
bool power_trace_ok(const Mat& m, const Mat& a) {
  Mat pw = m;
  for (int k = 1; k < a.dim(); ++k) {
    if (!trace_form(pw, a).is_zero()) return false;
    if (k + 1 < a.dim()) pw = pw * m;
  }
  return true;
}

std::int64_t hyperplane_count(const Field& f, int n) {
  std::int64_t count = 1;
  for (int i = 0; i + 1 < n * n; ++i) count *= f->order();
  return count;
}

bool hyperplane_enumerable(const Field& f, int n, double cap) {
  if (!f->is_finite()) return false;
  double total = 1;
  for (int i = 0; i + 1 < n * n; ++i) total *= static_cast<double>(f->order());
  return total <= cap;
}

Mat element_at(const std::vector<Mat>& basis, const Field& f, int n, std::int64_t idx) {
  Mat m(f, n);
  std::int64_t rest = idx;
  for (const Mat& bmat : basis) {
    Scalar c = f->element(rest % f->order());
    rest /= f->order();
    if (!c.is_zero()) m = m + bmat.scaled(c);
  }
  return m;
}

}  // namespace

std::optional<std::pair<Mat, Mat>> oracle_decompose(const Mat& a, const Hyperplane& h,
                                                    OracleMode mode, long budget,
                                                    std::uint64_t seed) {
  const Field& f = a.field();
  if (!f->same_field(*h.field())) throw error("matrix and hyperplane over different fields");
  if (a.dim() != h.dim()) throw error("matrix and hyperplane dimensions differ");
  if (!a.trace().is_zero()) throw error("oracle wants a trace-zero matrix");
  int n = a.dim();
  if (a.is_zero()) return std::make_pair(Mat(f, n), Mat(f, n));

  if (mode == OracleMode::exhaustive) {
    if (!hyperplane_enumerable(f, n, 1e6))
      throw error("hyperplane too large for the exhaustive oracle");
    std::vector<Mat> basis = hyperplane_basis(h);
    std::int64_t count = hyperplane_count(f, n);
    for (std::int64_t idx = 1; idx < count; ++idx) {
      Mat m = element_at(basis, f, n, idx);
      if (!power_trace_ok(m, a)) continue;
      if (auto x = joint_solve(a, h, m)) return std::make_pair(std::move(m), std::move(*x));
    }
    return std::nullopt;
  }

  Rng rng(seed);
  std::vector<Mat> basis = hyperplane_basis(h);
  for (long it = 0; it < budget; ++it) {
    Mat m(f, n);
    for (const Mat& bmat : basis) {
      Scalar c = rng.scalar(f);
      if (!c.is_zero()) m = m + bmat.scaled(c);
    }
    if (m.is_zero()) continue;
    if (!power_trace_ok(m, a)) continue;
    if (auto x = joint_solve(a, h, m)) return std::make_pair(std::move(m), std::move(*x));
  }
  return std::nullopt;
}

VerifyResult verify_decomposition(const Mat& a, const Hyperplane& h, const Mat& a1,
                                  const Mat& a2) {
  VerifyResult res;
  if (!a.field()->same_field(*h.field()) || !a.field()->same_field(*a1.field()) ||
      !a.field()->same_field(*a2.field())) {
    res.failure = "field mismatch between inputs";
    return res;
  }
  if (a.dim() != h.dim() || a.dim() != a1.dim() || a.dim() != a2.dim()) {
    res.failure = "dimension mismatch between inputs";
    return res;
  }
  if (commutator(a1, a2) != a) {
    res.failure = "commutator of the pair differs from the target";
    return res;
  }
  if (!h.contains(a1)) {
    res.failure = "first factor lies outside the hyperplane";
    return res;
  }
  if (!h.contains(a2)) {
    res.failure = "second factor lies outside the hyperplane";
    return res;
  }
  res.ok = true;
  return res;
}

BracketSetReport enumerate_bracket_set(const Hyperplane& h) {
  const Field& f = h.field();
  int n = h.dim();
  if (!hyperplane_enumerable(f, n, 4096)) throw error("hyperplane too large to enumerate");
  std::vector<Mat> basis = hyperplane_basis(h);
  std::int64_t count = hyperplane_count(f, n);
  std::vector<Mat> elems;
  elems.reserve(static_cast<std::size_t>(count));
  for (std::int64_t idx = 0; idx < count; ++idx) elems.push_back(element_at(basis, f, n, idx));

  std::set<Mat> brackets;
  for (const Mat& x : elems)
    for (const Mat& y : elems) brackets.insert(commutator(x, y));

  BracketSetReport rep;
  rep.hyperplane_size = static_cast<long>(count);
  rep.set_size = static_cast<long>(brackets.size());
  std::vector<Vec> flat;
  flat.reserve(brackets.size());
  for (const Mat& m : brackets) {
    Vec v(f, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v.at(i * n + j) = m.at(i, j);
    flat.push_back(std::move(v));
  }
  rep.span_dimension = rank_of_vectors(flat);
  std::int64_t span_size = 1;
  for (int i = 0; i < rep.span_dimension; ++i) span_size *= f->order();
  rep.set_equals_span = rep.set_size == static_cast<long>(span_size);
  return rep;
}

SweepReport sweep(const SweepConfig& config) {
  if (!config.field) throw error("sweep wants a field");
  if (config.n < 2) throw error("sweep wants n >= 2");
  auto t0 = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.config = config;
  for (long i = 0; i < config.count; ++i) {
    std::uint64_t si = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    Rng rng(si);
    Mat a = rng.nonzero_trace_zero_matrix(config.field, config.n);
    Mat b = config.force_identity_in_h
                ? rng.nonzero_trace_zero_matrix(config.field, config.n)
                : rng.nonzero_matrix(config.field, config.n);
    Hyperplane h(std::move(b));
    DecomposeOptions opt;
    opt.budget = config.budget;
    opt.seed = si;
    SolveOutcome out = decompose(a, h, opt);
    if (out.status == SolveStatus::decomposed && out.decomposition) {
      ++rep.successes;
      ++rep.strategy_histogram[strategy_name(out.decomposition->strategy())];
    } else {
      rep.failures.push_back(SweepFailure{i, std::move(a), h.normal(), out.status});
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_ms =
      static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  return rep;
}

}  // namespace slb
