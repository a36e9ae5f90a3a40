#pragma once

#include <utility>
#include <vector>

#include "slbracket/matrix.hpp"

namespace slb {

// Trace-form hyperplane {M : tr(BM) = 0} of the full matrix algebra, handed
// around by its normal B.  Normals are kept exactly as given; proportional
// normals describe the same hyperplane and same_hyperplane tests that.
class Hyperplane {
 public:
  explicit Hyperplane(Mat normal);

  const Mat& normal() const { return normal_; }
  const Field& field() const { return normal_.field(); }
  int dim() const { return normal_.dim(); }
  bool contains_identity() const { return contains_identity_; }

  bool contains(const Mat& m) const;

  // X + tC with t chosen so the sum lands in the hyperplane; requires
  // tr(BC) != 0, i.e. C outside the hyperplane.
  Mat land_on(const Mat& x, const Mat& c) const;

  // Replace the normal by B - lambda*A.  Any trace-zero A in the image of
  // both ad-factors keeps decompositions of A valid across the shift.
  Hyperplane shift_normal(const Mat& a, const Scalar& lambda) const;

  // Hyperplane with normal P^{-1} B P; M lies here iff P M P^{-1} lay in the
  // original.
  Hyperplane conjugated_by(const Mat& p) const;

  // (A1 + lambda*I, A2 + mu*I) placed into the hyperplane; only possible when
  // the identity is outside, i.e. tr(B) != 0.
  std::pair<Mat, Mat> scalar_adjust_pair(const Mat& a1, const Mat& a2) const;

  bool same_hyperplane(const Hyperplane& other) const;

 private:
  Mat normal_;
  bool contains_identity_;
};

// Basis of the hyperplane as a subspace of the n*n matrices (dimension
// n^2 - 1), produced by the deterministic kernel routine.
std::vector<Mat> hyperplane_basis(const Hyperplane& h);

}  // namespace slb
