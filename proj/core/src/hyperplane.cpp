#include "slbracket/hyperplane.hpp"

namespace slb {

Hyperplane::Hyperplane(Mat normal) : normal_(std::move(normal)), contains_identity_(false) {
  if (normal_.is_zero()) throw error("hyperplane normal must be nonzero");
  contains_identity_ = normal_.trace().is_zero();  // tr(B * I) = tr(B)
}

bool Hyperplane::contains(const Mat& m) const {
  if (m.dim() != dim()) throw error("matrix dimension mismatch");
  return trace_form(normal_, m).is_zero();
}

Mat Hyperplane::land_on(const Mat& x, const Mat& c) const {
  Scalar bc = trace_form(normal_, c);
  if (bc.is_zero()) throw error("landing direction lies inside the hyperplane");
  Scalar t = -(trace_form(normal_, x) / bc);
  return x + c.scaled(t);
}

Hyperplane Hyperplane::shift_normal(const Mat& a, const Scalar& lambda) const {
  Mat b = normal_ - a.scaled(lambda);
  return Hyperplane(std::move(b));
}

Hyperplane Hyperplane::conjugated_by(const Mat& p) const {
  return Hyperplane(conjugate(p, normal_));
}

std::pair<Mat, Mat> Hyperplane::scalar_adjust_pair(const Mat& a1, const Mat& a2) const {
  Scalar tb = normal_.trace();
  if (tb.is_zero()) throw error("identity lies in the hyperplane; scalar shifts cannot land");
  Mat id = Mat::identity(field(), dim());
  Scalar lambda = -(trace_form(normal_, a1) / tb);
  Scalar mu = -(trace_form(normal_, a2) / tb);
  return {a1 + id.scaled(lambda), a2 + id.scaled(mu)};
}

bool Hyperplane::same_hyperplane(const Hyperplane& other) const {
  if (other.dim() != dim()) return false;
  // proportional normals cut out the same hyperplane
  std::vector<Mat> fam = {normal_};
  return in_span(fam, other.normal_) && in_span(std::vector<Mat>{other.normal_}, normal_);
}

std::vector<Mat> hyperplane_basis(const Hyperplane& h) {
  const Mat& b = h.normal();
  int n = h.dim();
  // tr(BM) = 0 is a single linear constraint on the row-major coordinates of
  // M, with B_{ji} multiplying M_{ij}.  Mirror the kernel routine by hand:
  // the first coordinate carrying a nonzero coefficient is the pivot, every
  // other coordinate is free and contributes one basis matrix.
  int pi = -1, pj = -1;
  for (int i = 0; i < n && pi < 0; ++i)
    for (int j = 0; j < n; ++j)
      if (!b.at(j, i).is_zero()) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) throw error("hyperplane normal must be nonzero");
  Scalar pivot_coeff = b.at(pj, pi);
  std::vector<Mat> basis;
  basis.reserve(static_cast<std::size_t>(n) * n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == pi && j == pj) continue;
      Mat m(h.field(), n);
      m.at(i, j) = h.field()->one();
      Scalar coeff = b.at(j, i);
      if (!coeff.is_zero()) m.at(pi, pj) = -(coeff / pivot_coeff);
      basis.push_back(std::move(m));
    }
  return basis;
}

}  // namespace slb
