#pragma once

// Centralizers, commutants and the isotypic projector, the transversal
// subspace p = k_perp cap z_g_perp, and numerical Mostow factorization
// g = k exp(P) exp(Z).

#include "redukit/cartan.hpp"
#include "redukit/liealg.hpp"

#include <cstdint>
#include <random>

namespace redukit {

struct ReductivePair {
  LieAlgebra g;
  Subalgebra h;
  CartanStructure cartan;
  Subalgebra z_g;     // centralizer of h in g
  Subspace z_g_perp;  // Killing-orthocomplement of z_g
  Subspace p;         // k_perp cap z_g_perp
  Subspace k_cap_z;   // k_perp cap z_g
};

/// Joint kernel of ad(h_i) on g.
Subalgebra centralizer(const LieAlgebra& g, const Subspace& h, double tol = kRankTol);

/// Throws NotThetaStable when theta(h) is not contained in h.
ReductivePair build_pair(LieAlgebra g, Subalgebra h, CartanStructure cartan, double tol = kRankTol);

/// Commutant z of drho(h) in gl(V) with the trace-form-orthogonal projector.
/// The basis is adapted to the trace form: Tr(z_i z_j) = signs_i [i == j].
struct CommutantData {
  Representation rep;
  Mat z_basis;     // m^2 x dim z, column-major vectorized matrices
  Vec signs;
  Mat projector;   // m^2 x m^2 matrix of pi_z on vectorized matrices

  int dim() const { return static_cast<int>(z_basis.cols()); }
  Mat element(int i) const { return unvec(z_basis.col(i), rep.dim, rep.dim); }
};

/// `h` is given in coordinates of the algebra on which `rep` is defined.
CommutantData commutant(const Representation& rep, const Subspace& h, double tol = kRankTol);

Mat project_z(const CommutantData& comm, const Mat& a);

struct MostowCoords {
  Mat k_factor;
  Vec p_component;  // coordinates in g
  Vec z_component;  // coordinates in g
  Mat p_matrix;
  Mat z_matrix;
  double residual = 0.0;             // ||g - k exp(P) exp(Z)||_F
  double membership_residual = 0.0;  // distance of log|g| from the algebra
  int iterations = 0;
};

/// Inverts (k, P, Z) -> k exp(P) exp(Z) for g in the connected group of the
/// defining representation. Throws NoConvergence after max_iter Newton steps.
MostowCoords mostow_factor(const ReductivePair& pair, const Mat& g, double tol = 1e-10, int max_iter = 50);

/// k exp(P) exp(Z) with P, Z in g coordinates.
Mat mostow_compose(const ReductivePair& pair, const Mat& k, const Vec& p, const Vec& z);

/// Left-trivialized derivative of (kappa, P, Z) -> exp(kappa) exp(P) exp(Z)
/// along orthonormal coordinate bases of k, p and k_cap_z (a dim g square
/// matrix).
Mat mostow_jacobian(const ReductivePair& pair, const Vec& kappa, const Vec& p, const Vec& z);

/// Uniform sample of the ball of given Frobenius radius in a subspace of g.
Vec sample_ball(const LieAlgebra& g, const Subspace& s, double radius, std::mt19937_64& rng);

struct YSample {
  Vec kappa;  // element of k
  Vec p;      // element of p
  GroupElement element;  // exp(kappa) exp(p)
  Mat matrix;            // in the defining representation
};

YSample sample_y(const ReductivePair& pair, double radius, std::mt19937_64& rng);
YSample sample_y(const ReductivePair& pair, double radius, std::uint64_t seed);

/// Deterministic per-index substream seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace redukit
