#pragma once

#include "redukit/numerics.hpp"

namespace redukit {

/// Linear subspace of R^d stored by an orthonormal basis (columns).
struct Subspace {
  Mat basis;

  static Subspace span(const Mat& vectors, double tol = kRankTol);
  static Subspace whole(Eigen::Index d);
  static Subspace zero(Eigen::Index d);

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient() const { return static_cast<int>(basis.rows()); }

  /// Orthogonal projector onto the subspace.
  Mat projector() const { return basis * basis.transpose(); }
  /// Euclidean distance from x to the subspace.
  double distance(const Vec& x) const { return (x - basis * (basis.transpose() * x)).norm(); }
};

Subspace sum(const Subspace& a, const Subspace& b, double tol = kRankTol);
Subspace intersect(const Subspace& a, const Subspace& b, double tol = kRankTol);
/// {x : a^T G x = 0} for a symmetric bilinear form with Gram matrix G.
Subspace orthocomplement(const Subspace& a, const Mat& gram, double tol = kRankTol);

/// max over unit basis vectors of a of their distance to b. Zero iff a is
/// contained in b.
double containment_residual(const Subspace& a, const Subspace& b);
/// Distance between the orthogonal projectors (0 iff equal subspaces).
double subspace_distance(const Subspace& a, const Subspace& b);

}  // namespace redukit
