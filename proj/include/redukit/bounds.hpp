#pragma once

// Certified non-contraction constants: the trace-convexity inequality, the
// expansion property of pi_z(rho(exp p)), the matrix-coefficient space
// C(Ad_rho) with its invariant functional pi_R, and the linear program that
// produces the constant.

#include "redukit/cartan.hpp"
#include "redukit/reductive_pair.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace redukit {

struct CvxResult {
  double lhs = 0.0;  // Tr(exp(S) pi)
  double rhs = 0.0;  // rank(pi) exp(Tr(S pi) / rank(pi))
  int rank = 0;
  bool holds = false;
};

/// Throws ZeroProjector for pi = 0 and InvalidArgument when pi is not a
/// symmetric idempotent.
CvxResult cvx_check(const Mat& s, const Mat& pi);

struct ExpansionResult {
  Mat projected;  // pi_z(rho(exp p))
  Vec eigenvalues;
  double min_eigenvalue = 0.0;
  double self_adjoint_residual = 0.0;
};

/// Throws MembershipViolation when p_elt (g coordinates) is not in p.
ExpansionResult expansion_check(const ReductivePair& pair, const CommutantData& comm,
                                const AdaptedInnerProduct& ip, const Vec& p_elt, double tol = kRankTol);

/// Finite subset of H, each element an exponential product with factors in
/// g coordinates, with cached images under rho.
struct OmegaSet {
  std::vector<GroupElement> elements;
  std::vector<Mat> images;
  std::vector<Mat> inverse_images;

  std::size_t size() const { return elements.size(); }
};

OmegaSet make_omega(const Representation& rep, std::vector<GroupElement> elements);
OmegaSet omega_subset(const OmegaSet& omega, const std::vector<int>& indices);

struct CoefficientSampling {
  std::uint64_t seed = 7;
  int count = 0;  // 0: 4 m^4 capped at 2000
  int max_factors = 3;
  double coefficient_range = 2.0;
};

/// Functions F_ab(h) = entry_a(rho(h) E_b rho(h)^-1) with a = i*m + j and
/// b = k*m + l indexing elementary matrices. A maximal independent family
/// is selected from sampled evaluations.
struct CoefficientSpaceData {
  int m = 0;
  int dim = 0;
  std::vector<std::pair<int, int>> basis_index;
  Vec pi_r;  // (pi_R)_k = entry_a(pi_z(E_b)) for basis_index[k] = (a, b)
  std::vector<Mat> sample_images;
  std::vector<Mat> sample_inverse_images;
  Mat sample_values;  // samples x dim
};

double coefficient_value(const Mat& rho_h, const Mat& rho_h_inv, int a, int b);

CoefficientSpaceData coefficient_space(const CommutantData& comm, const Subspace& h,
                                       const CoefficientSampling& sampling = {}, double tol = kRankTol);

/// |Omega| x dim matrix of the basis functions at the Omega elements.
Mat evaluation_matrix(const CoefficientSpaceData& cs, const OmegaSet& omega);

/// Coordinates, in the basis of cs, of h -> phi(rho(h) g rho(h)^-1) where
/// phi(A) = sum_ij phi_ij A_ij. `residual` receives the relative fit error.
Vec express_coefficient(const CoefficientSpaceData& cs, const Mat& phi, const Mat& g, double* residual = nullptr);

double pi_r_value(const CoefficientSpaceData& cs, const Vec& coeffs);
/// pi_R(<phi, g>) = phi(pi_z(g)).
double pi_r_of_coefficient(const CommutantData& comm, const Mat& phi, const Mat& g);

bool condition_star(const CoefficientSpaceData& cs, const OmegaSet& omega, double tol = kRankTol);

struct OmegaReduction {
  OmegaSet omega;
  std::vector<int> indices;
};

/// Subset of at most dim(C) elements still satisfying condition (*).
/// Throws StarViolated when the input does not satisfy it.
OmegaReduction reduce_omega(const CoefficientSpaceData& cs, const OmegaSet& omega, double tol = kRankTol);

struct BoundCertificate {
  double c_prime = 0.0;  // sup of pi_R over the unit ball of sup_Omega |f|
  double c_norm = 0.0;   // max over Omega of ||rho(omega^-1)|| in the adapted norm
  double c_eff = 0.0;    // 1 / (c_norm c_prime)
  LpSolution lp;
  OmegaSet omega;
  int coefficient_dim = 0;
};

BoundCertificate compute_constant(const CommutantData& comm, const AdaptedInnerProduct& ip,
                                  const CoefficientSpaceData& cs, const OmegaSet& omega, double tol = kRankTol);

/// sup over Omega of ||rho_y rho(omega) v|| in the adapted norm.
double orbit_sup_norm(const AdaptedInnerProduct& ip, const OmegaSet& omega, const Mat& rho_y, const Vec& v);

struct VerifyReport {
  long samples = 0;
  long violations = 0;
  double min_ratio = 0.0;
  double threshold = 0.0;
};

/// Draws y from Y = K exp(p) and v on the adapted unit sphere; each sample
/// uses its own substream of `seed`, so the outcome does not depend on
/// `threads`.
VerifyReport verify_bound(const ReductivePair& pair, const Representation& rep, const AdaptedInnerProduct& ip,
                          const BoundCertificate& cert, long samples, double radius, std::uint64_t seed,
                          int threads = 0);

}  // namespace redukit
