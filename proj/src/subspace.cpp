#include "redukit/subspace.hpp"

#include <algorithm>

namespace redukit {

Subspace Subspace::span(const Mat& vectors, double tol) { return Subspace{range_basis(vectors, tol)}; }

Subspace Subspace::whole(Eigen::Index d) { return Subspace{Mat::Identity(d, d)}; }

Subspace Subspace::zero(Eigen::Index d) { return Subspace{Mat(d, 0)}; }

Subspace sum(const Subspace& a, const Subspace& b, double tol) {
  Mat both(a.ambient(), a.dim() + b.dim());
  both << a.basis, b.basis;
  return Subspace::span(both, tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient());
  Mat joined(a.ambient(), a.dim() + b.dim());
  joined << a.basis, -b.basis;
  const Mat ker = null_space(joined, tol);
  return Subspace::span(a.basis * ker.topRows(a.dim()), tol);
}

Subspace orthocomplement(const Subspace& a, const Mat& gram, double tol) {
  if (a.dim() == 0) return Subspace::whole(gram.rows());
  return Subspace{null_space(a.basis.transpose() * gram, tol)};
}

double containment_residual(const Subspace& a, const Subspace& b) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.basis.cols(); ++j) worst = std::max(worst, b.distance(a.basis.col(j)));
  return worst;
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  return (a.projector() - b.projector()).norm();
}

}  // namespace redukit
