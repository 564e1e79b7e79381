#pragma once

// Cartan involution realized as X -> -X^T on a transpose-stable matrix
// algebra, the positive form B_theta, and Euclidean structures on a
// representation space whose adjunction extends -theta.

#include "redukit/liealg.hpp"

#include <cmath>

namespace redukit {

struct CartanStructure {
  Mat theta;  // d x d, column j = coordinates of theta(X_j)
  BilinearForm killing;
  BilinearForm b_theta;
  Subspace k;       // fixed space of theta
  Subspace k_perp;  // (-1)-eigenspace

  Vec apply(const Vec& x) const { return theta * x; }
};

/// Throws NotTransposeClosed or NotPositiveDefinite.
CartanStructure standard_theta(const LieAlgebra& alg, double tol = kRankTol);

/// ||theta^2 - I||_F.
double involution_residual(const CartanStructure& cs);
/// max ||theta[X_i, X_j] - [theta X_i, theta X_j]|| relative to scale.
double automorphism_residual(const LieAlgebra& alg, const CartanStructure& cs);

/// Largest distance of theta(b) from `sub` over unit basis vectors b.
double theta_stability_residual(const CartanStructure& cs, const Subspace& sub);
bool is_theta_stable(const CartanStructure& cs, const Subspace& sub, double tol = kRankTol);

/// A Euclidean structure v -> sqrt(v^T Q v) on the representation space.
class AdaptedInnerProduct {
 public:
  AdaptedInnerProduct() = default;
  explicit AdaptedInnerProduct(Mat q);

  const Mat& q() const { return q_; }
  /// Q^{1/2}: maps the Q-geometry to the standard one.
  const Mat& whitening() const { return sqrt_q_; }
  const Mat& unwhitening() const { return inv_sqrt_q_; }

  double inner(const Vec& a, const Vec& b) const { return a.dot(q_ * b); }
  double norm(const Vec& v) const { return std::sqrt(inner(v, v)); }
  double operator_norm(const Mat& a) const { return spectral_norm(sqrt_q_ * a * inv_sqrt_q_); }
  /// Adjoint for Q: Q^{-1} A^T Q.
  Mat adjoint(const Mat& a) const { return q_inv_ * a.transpose() * q_; }
  /// The involution A -> -A^* of gl(V).
  Mat theta_v(const Mat& a) const { return -adjoint(a); }
  /// A in Q-whitened coordinates (symmetric iff A is self-adjoint).
  Mat whiten(const Mat& a) const { return sqrt_q_ * a * inv_sqrt_q_; }

 private:
  Mat q_;
  Mat q_inv_;
  Mat sqrt_q_;
  Mat inv_sqrt_q_;
};

enum class AmbiguityPolicy {
  Strict,           // more than one independent solution raises NoSolution
  NearestIdentity,  // pick the solution closest to the identity
};

/// Solves Q drho(theta X) + drho(X)^T Q = 0 over the basis for symmetric Q,
/// keeps a positive definite solution normalized to Tr(Q) = dim V.
AdaptedInnerProduct adapt_inner_product(const CartanStructure& cs, const Representation& rep,
                                        AmbiguityPolicy policy = AmbiguityPolicy::Strict,
                                        double tol = kRankTol);

/// max_i ||Q drho(theta X_i) + drho(X_i)^T Q||_F relative to scale.
double adjunction_residual(const CartanStructure& cs, const Representation& rep,
                           const AdaptedInnerProduct& ip);

}  // namespace redukit
