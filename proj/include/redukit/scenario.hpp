#pragma once

// JSON scenario files: an algebra, a subalgebra, a representation, a finite
// Omega, and run parameters. Matrices are row-major nested arrays.

#include "redukit/bounds.hpp"
#include "redukit/cartan.hpp"
#include "redukit/focusing.hpp"
#include "redukit/reductive_pair.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace redukit {

inline constexpr int kScenarioSchemaVersion = 1;

struct Tolerances {
  double rank = kRankTol;
  double newton = 1e-10;
  double verify = 1e-6;
};

struct SamplingSettings {
  std::uint64_t seed = 1;
  long count = 10000;
  double radius = 3.0;
};

struct MostowSettings {
  int count = 5;
  double radius = 1.0;
};

struct FocusingSettings {
  Vec v;  // empty: first standard basis vector
  std::vector<Family> families;
  std::vector<double> grid = default_grid();
  double threshold_a = 1e6;
  double threshold_b = 1e6;
};

struct Scenario {
  std::string name;
  int ambient_dim = 0;
  std::vector<Mat> g_basis;
  Mat h_coords;  // d x dim h, columns in g coordinates as given
  Representation rep;
  std::vector<GroupElement> omega;  // factors converted to g coordinates
  bool reduce_omega = true;
  Tolerances tolerances;
  SamplingSettings sampling;
  CoefficientSampling coefficients;
  MostowSettings mostow;
  FocusingSettings focusing;
  AmbiguityPolicy policy = AmbiguityPolicy::Strict;
};

/// Throws LoadError on malformed input or broken references.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Everything derived from a scenario.
struct Context {
  Scenario scenario;
  ReductivePair pair;
  CommutantData comm;
  AdaptedInnerProduct ip;
  OmegaSet omega;
  double homomorphism_residual = 0.0;
};

/// Re-checks the module invariants: closure (ValidationFailed), the
/// representation property (ValidationFailed), theta-stability of h
/// (NotThetaStable).
Context build_context(const Scenario& sc);

nlohmann::json matrix_to_json(const Mat& a);
Mat matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j);

}  // namespace redukit
