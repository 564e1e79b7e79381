#pragma once

// The five commands of the command-line tool, callable as library functions.
// Each returns a report whose exit_code follows the tool's convention:
// 0 success, 2 validation failure, 3 bound violation, 4 non-convergence.

#include "redukit/error.hpp"
#include "redukit/report.hpp"
#include "redukit/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace redukit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitNoConvergence = 4;

int exit_code_for(ErrorCode code);

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> rank_tol;
  std::optional<long> samples;
  std::optional<Mat> element;  // mostow: factor this matrix
  std::optional<Vec> v;        // focusing: base vector
  int threads = 0;
};

struct NamedResidual {
  std::string name;
  double value = 0.0;
  double limit = 1e-8;

  bool ok() const { return value <= limit; }
};

/// Closure, Jacobi, representation, involution, automorphism and
/// adjunction residuals.
std::vector<NamedResidual> structural_checks(const Context& ctx);
/// The nine compatibility properties between theta, h, z_g, z and the
/// adapted inner product.
std::vector<NamedResidual> remark_suite(const Context& ctx);

Report cmd_check(const Scenario& sc, const CommandOptions& opts = {});
Report cmd_constant(const Scenario& sc, const CommandOptions& opts = {});
Report cmd_verify(const Scenario& sc, const CommandOptions& opts = {});
Report cmd_mostow(const Scenario& sc, const CommandOptions& opts = {});
Report cmd_focusing(const Scenario& sc, const CommandOptions& opts = {});

/// Dispatch by name; unknown names raise InvalidArgument.
Report run_command(const std::string& name, const Scenario& sc, const CommandOptions& opts = {});

}  // namespace redukit
