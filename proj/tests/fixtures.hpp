#pragma once

#include "redukit/commands.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using redukit::Mat;
using redukit::Vec;

inline Mat elem(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// (H0, E, F) with H0 = diag(1, -1).
inline std::vector<Mat> sl2() { return {elem(2, 0, 0) - elem(2, 1, 1), elem(2, 0, 1), elem(2, 1, 0)}; }

// H1, H2, E12, E13, E23, E21, E31, E32.
inline std::vector<Mat> sl3() {
  return {elem(3, 0, 0) - elem(3, 1, 1), elem(3, 1, 1) - elem(3, 2, 2), elem(3, 0, 1), elem(3, 0, 2),
          elem(3, 1, 2), elem(3, 1, 0), elem(3, 2, 0), elem(3, 2, 1)};
}

inline std::string scenario_path(const std::string& name) {
  return std::string(REDUKIT_SCENARIO_DIR) + "/" + name + ".json";
}

inline redukit::Scenario load(const std::string& name) { return redukit::load_scenario(scenario_path(name)); }

inline Mat gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = n(rng);
  }
  return a;
}

inline Mat random_symmetric(std::mt19937_64& rng, int m, double scale) {
  const Mat a = gaussian(rng, m, m);
  return scale * 0.5 * (a + a.transpose());
}

// Orthogonal projector of rank r.
inline Mat random_projector(std::mt19937_64& rng, int m, int r) {
  Eigen::HouseholderQR<Mat> qr(gaussian(rng, m, m));
  const Mat q = qr.householderQ() * Mat::Identity(m, m);
  return q.leftCols(r) * q.leftCols(r).transpose();
}

}  // namespace fixtures
