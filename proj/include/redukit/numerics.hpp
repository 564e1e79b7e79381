#pragma once

// Dense real-matrix substrate shared by every other module.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace redukit {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Relative threshold for every rank decision.
inline constexpr double kRankTol = 1e-9;
/// Threshold for reconstruction and identity checks.
inline constexpr double kCheckTol = 1e-10;

struct SpectralProjector {
  double eigenvalue = 0.0;
  Mat projector;
  int rank = 0;
};

/// Eigendecomposition of a symmetric matrix. Eigenvalues closer than
/// tol * max|eigenvalue| are merged into a single spectral projector.
struct SymEig {
  Vec eigenvalues;  // ascending
  Mat eigenvectors;  // orthonormal columns, aligned with eigenvalues
  std::vector<SpectralProjector> projectors;

  /// Sum of eigenvalue * projector.
  Mat reconstruct() const;
  /// f applied on the spectrum, recombined with the eigenvectors.
  template <class F>
  Mat apply(F&& f) const {
    Vec fv = eigenvalues.unaryExpr(f);
    return eigenvectors * fv.asDiagonal() * eigenvectors.transpose();
  }
};

SymEig sym_eig(const Mat& s, double tol = kRankTol);

Mat expm(const Mat& x);

/// Orthonormal basis (columns) of ker(a). Singular values at or below
/// tol * sigma_max count as zero.
Mat null_space(const Mat& a, double tol = kRankTol);

/// Orthonormal basis (columns) of the column span of a.
Mat range_basis(const Mat& a, double tol = kRankTol);

struct RankSelection {
  int rank = 0;
  std::vector<int> selected;
};

/// Greedy in-order selection of a basis of span(vectors). A vector is kept
/// when its component orthogonal to the previously kept ones exceeds
/// tol times the largest input norm.
RankSelection rank_basis(std::span<const Vec> vectors, double tol = kRankTol);
/// Same, on the columns of a matrix.
RankSelection rank_basis_columns(const Mat& columns, double tol = kRankTol);

/// max r.x subject to |E_j x| <= bound_j for every row j.
struct LpProblem {
  Vec objective;
  Mat constraints;
  Vec bound;  // empty means all ones
};

struct LpSolution {
  double optimum = 0.0;
  Vec x;      // primal optimizer
  Vec dual;   // lambda with E^T lambda = r minimizing sum bound_j |lambda_j|
  double dual_value = 0.0;
  double duality_gap = 0.0;
  double primal_infeasibility = 0.0;  // max_j (|E_j x| - bound_j), clipped at 0
  double dual_infeasibility = 0.0;    // ||E^T lambda - r||_inf
  int iterations = 0;
};

/// Dense revised simplex with Bland's rule on the dual l1 form.
/// Throws Unbounded when r is outside the row space of E, Degenerate when E
/// lacks full column rank.
LpSolution lp_max(const LpProblem& problem, double tol = kRankTol);

// Small helpers used across modules.

/// Column-major vectorization.
Vec vec(const Mat& a);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);

double symmetry_residual(const Mat& s);
bool all_finite(const Mat& a);

/// Square root, inverse square root, and logarithm of a symmetric positive
/// definite matrix.
Mat sqrt_spd(const Mat& s);
Mat inv_sqrt_spd(const Mat& s);
Mat log_spd(const Mat& s);

/// Largest singular value.
double spectral_norm(const Mat& a);

}  // namespace redukit
