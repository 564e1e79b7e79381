#pragma once

// Real matrix Lie algebras presented by explicit bases, their
// representations, and the invariant bilinear forms on them.

#include "redukit/numerics.hpp"
#include "redukit/subspace.hpp"

#include <vector>

namespace redukit {

/// A real Lie algebra of n x n matrices given by a basis X_0..X_{d-1}.
/// Construction verifies linear independence and bracket closure; the
/// structure constants are stored as the adjoint matrices
/// ad(X_i)(k, j) = c_ij^k with [X_i, X_j] = sum_k c_ij^k X_k.
class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<Mat> basis, double tol = kRankTol);

  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient_dim() const { return ambient_; }
  const std::vector<Mat>& basis() const { return basis_; }

  Mat element(const Vec& coeffs) const;
  /// Least-squares coordinates of x in the basis.
  Vec coordinates(const Mat& x) const;
  /// ||x - element(coordinates(x))||_F.
  double coordinate_residual(const Mat& x) const;

  /// Coordinates of [a, b].
  Vec bracket(const Vec& a, const Vec& b) const;
  double structure_constant(int i, int j, int k) const { return ad_[i](k, j); }

  const Mat& ad(int i) const { return ad_[i]; }
  Mat ad(const Vec& x) const;

  /// Gram matrix of the Frobenius inner product on the basis.
  const Mat& frobenius_gram() const { return frobenius_gram_; }

  /// Largest relative residual of a bracket outside the span.
  double closure_residual() const { return closure_residual_; }
  double jacobi_residual() const;

 private:
  int ambient_ = 0;
  std::vector<Mat> basis_;
  Mat vec_basis_;  // n^2 x d
  Eigen::ColPivHouseholderQR<Mat> qr_;
  std::vector<Mat> ad_;
  Mat frobenius_gram_;
  double closure_residual_ = 0.0;
};

/// A subalgebra (or, where noted, merely a subspace) in coefficient
/// coordinates of its parent.
struct Subalgebra {
  Subspace space;
  double closure_residual = 0.0;

  int dim() const { return space.dim(); }
};

/// Spans `vectors` (columns, parent coordinates) and checks bracket closure.
/// Throws ValidationFailed when the span is not closed.
Subalgebra make_subalgebra(const LieAlgebra& alg, const Mat& vectors, double tol = kRankTol);
double subalgebra_closure_residual(const LieAlgebra& alg, const Subspace& space);

enum class FormKind { Killing, Trace, BTheta };

struct BilinearForm {
  Mat gram;
  FormKind kind = FormKind::Killing;

  double operator()(const Vec& a, const Vec& b) const { return a.dot(gram * b); }
};

/// A Lie algebra homomorphism d rho : g -> gl(m), given on the basis.
struct Representation {
  int dim = 0;
  std::vector<Mat> drho;

  Mat operator()(const Vec& coeffs) const;
};

Representation adjoint_rep(const LieAlgebra& alg);
/// The tautological representation on R^n.
Representation defining_rep(const LieAlgebra& alg);
/// max_ij ||drho([X_i, X_j]) - [drho X_i, drho X_j]||_F relative to scale.
double homomorphism_residual(const LieAlgebra& alg, const Representation& rep);

BilinearForm killing_form(const LieAlgebra& alg);
/// (A, B) -> Tr(AB) on gl(m) in the elementary basis E_ab, index a = i*m + j.
BilinearForm trace_form(int m);

struct CenterAndDerived {
  Subalgebra center;
  Subalgebra derived;
};

CenterAndDerived center_and_derived(const LieAlgebra& alg, double tol = kRankTol);

/// (h + z(g)) cap [g, g].
Subalgebra reductive_split(const LieAlgebra& alg, const Subalgebra& h, double tol = kRankTol);

/// Killing form nondegenerate.
bool is_semisimple(const LieAlgebra& alg, double tol = kRankTol);

/// Ordered product exp(X_1) exp(X_2) ... with each factor given by
/// coordinates in the algebra basis.
struct GroupElement {
  std::vector<Vec> factors;

  GroupElement inverse() const;
};

/// rho(g) = prod_k expm(drho(X_k)).
Mat evaluate(const Representation& rep, const GroupElement& g);

}  // namespace redukit
