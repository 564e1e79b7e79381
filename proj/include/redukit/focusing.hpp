#pragma once

// Orbit spans, point-wise fixators, and the two boundedness tests compared
// on one-parameter families t -> y(t).

#include "redukit/bounds.hpp"

#include <string>
#include <vector>

namespace redukit {

struct OrbitSpanData {
  Vec v;
  Mat span_basis;                // orthonormal basis of <Hv>
  std::vector<int> omega_basis;  // indices j with (rho(omega_j) v) a basis of <Omega v>
  Mat omega_vectors;             // columns rho(omega_j) v for j in omega_basis
  double invariance_residual = 0.0;
  bool spans_agree = false;  // <Omega v> = <Hv>

  int dim() const { return static_cast<int>(span_basis.cols()); }
  /// Basis used by test_a: the Omega vectors when available.
  const Mat& test_basis() const { return omega_basis.empty() ? span_basis : omega_vectors; }
};

/// Smallest drho(h)-invariant subspace containing v. With `omega`, also
/// extracts a basis of <Omega v> from the orbit vectors.
OrbitSpanData span_hv(const Representation& rep, const Subspace& h, const Vec& v,
                      const OmegaSet* omega = nullptr, double tol = kRankTol);

struct FixatorData {
  Subalgebra f_algebra;
  double annihilation_residual = 0.0;
};

/// {X in g : drho(X) w = 0 for every column w of `vectors`}.
FixatorData fixator(const LieAlgebra& g, const Representation& rep, const Mat& vectors, double tol = kRankTol);

struct FamilyFactor {
  Vec offset;  // g coordinates
  Vec slope;
};

/// y(t) = prod_k exp(offset_k + t slope_k).
struct Family {
  std::string name;
  std::vector<FamilyFactor> factors;

  GroupElement at(double t) const;
};

std::vector<double> default_grid();

struct TestAResult {
  bool holds = false;
  double max_coeff = 0.0;
  std::vector<double> profile;  // per grid point
};

TestAResult test_a(const Representation& rep, const AdaptedInnerProduct& ip, const OrbitSpanData& span,
                   const Family& family, const std::vector<double>& grid, double threshold);

enum class BVerdict { Holds, Fails, Inconclusive };
std::string_view to_string(BVerdict v);

struct TestBOptions {
  int budget = 400;  // descent iterations per grid point
  double gradient_tol = 1e-7;
};

struct TestBResult {
  BVerdict verdict = BVerdict::Inconclusive;
  std::vector<double> profile;  // min ||y(t) exp(F)||_F per grid point
  std::vector<BVerdict> point_verdicts;
};

/// Minimizes ||y(t) exp(sum c_j f_j)||_F over the fixator at every grid point.
TestBResult test_b(const LieAlgebra& g, const FixatorData& fix, const Family& family,
                   const std::vector<double>& grid, double threshold, const TestBOptions& options = {});

/// y(t) in K exp(p) for the probe values of t: the Z component of the
/// Mostow factorization vanishes (to `tol`). Probes are the grid points
/// where cond(y(t)) <= 1e6 plus t = 0.5 and t = 1.
bool family_in_y(const ReductivePair& pair, const Family& family, const std::vector<double>& grid,
                 double tol = 1e-6);

struct FamilyVerdict {
  std::string name;
  std::vector<double> grid;
  bool in_y = false;
  bool a_holds = false;
  double max_coeff = 0.0;
  std::vector<double> a_profile;
  BVerdict b_verdict = BVerdict::Inconclusive;
  std::vector<double> b_distance_profile;
  bool b_implies_a = true;  // false only if B holds and A fails
  // For families in Y: A and B agree. Unset for non-Y or inconclusive B.
  bool equivalence_checked = false;
  bool equivalence_holds = false;
};

struct FocusingOptions {
  std::vector<double> grid = default_grid();
  double threshold_a = 1e6;
  double threshold_b = 1e6;
  TestBOptions b;
};

struct FocusingReport {
  OrbitSpanData span;
  FixatorData fix;
  std::vector<FamilyVerdict> verdicts;
};

FocusingReport focusing_harness(const ReductivePair& pair, const Representation& rep, const AdaptedInnerProduct& ip,
                                const Vec& v, const OmegaSet* omega, const std::vector<Family>& families,
                                const FocusingOptions& options = {});

}  // namespace redukit
