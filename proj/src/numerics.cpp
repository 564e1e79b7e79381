#include "redukit/numerics.hpp"

#include "redukit/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace redukit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotTransposeClosed: return "NotTransposeClosed";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotThetaStable: return "NotThetaStable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StarViolated: return "StarViolated";
    case ErrorCode::ZeroRep: return "ZeroRep";
    case ErrorCode::ZeroProjector: return "ZeroProjector";
    case ErrorCode::MembershipViolation: return "MembershipViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::LoadError: return "LoadError";
  }
  return "Unknown";
}

Mat SymEig::reconstruct() const {
  const auto n = eigenvectors.rows();
  Mat out = Mat::Zero(n, n);
  for (const auto& p : projectors) out += p.eigenvalue * p.projector;
  return out;
}

bool all_finite(const Mat& a) { return a.allFinite(); }

double symmetry_residual(const Mat& s) { return (s - s.transpose()).norm(); }

SymEig sym_eig(const Mat& s, double tol) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "sym_eig expects a nonempty square matrix");
  }
  if (!all_finite(s)) throw Error(ErrorCode::InvalidArgument, "sym_eig: non-finite entries");
  const double fro = s.norm();
  if (symmetry_residual(s) > tol * fro) {
    throw Error(ErrorCode::NonSymmetric, "asymmetry " + std::to_string(symmetry_residual(s)));
  }
  const Mat sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);

  SymEig out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();

  const auto n = out.eigenvalues.size();
  const double scale = out.eigenvalues.cwiseAbs().maxCoeff();
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    const bool split =
        i == n || out.eigenvalues(i) - out.eigenvalues(i - 1) > tol * scale;
    if (!split) continue;
    const auto width = i - start;
    const Mat vc = out.eigenvectors.middleCols(start, width);
    SpectralProjector p;
    p.eigenvalue = out.eigenvalues.segment(start, width).mean();
    p.projector = vc * vc.transpose();
    p.rank = static_cast<int>(width);
    out.projectors.push_back(std::move(p));
    start = i;
  }
  return out;
}

Mat expm(const Mat& x) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::InvalidArgument, "expm expects a square matrix");
  if (x.isZero(0.0)) return Mat::Identity(x.rows(), x.cols());
  return x.exp();
}

Mat null_space(const Mat& a, double tol) {
  const auto cols = a.cols();
  if (a.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * smax) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

Mat range_basis(const Mat& a, double tol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& sv = svd.singularValues();
  const double smax = sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * smax) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

RankSelection rank_basis(std::span<const Vec> vectors, double tol) {
  RankSelection out;
  double scale = 0.0;
  for (const auto& v : vectors) scale = std::max(scale, v.norm());
  if (scale == 0.0) return out;

  std::vector<Vec> kept;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Vec w = vectors[i];
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : kept) w -= q.dot(w) * q;
    }
    const double r = w.norm();
    if (r > tol * scale) {
      kept.push_back(w / r);
      out.selected.push_back(static_cast<int>(i));
    }
  }
  out.rank = static_cast<int>(kept.size());
  return out;
}

RankSelection rank_basis_columns(const Mat& columns, double tol) {
  std::vector<Vec> vs;
  vs.reserve(columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) vs.emplace_back(columns.col(j));
  return rank_basis(vs, tol);
}

namespace {

enum class SimplexStatus { Optimal, Unbounded, IterationLimit };

// Revised simplex for min c.u subject to A u = rhs, u >= 0, from a feasible
// starting basis. Bland's rule on both entering and leaving choices.
SimplexStatus run_simplex(const Mat& a, const Vec& rhs, const Vec& c, std::vector<int>& basis,
                          const std::vector<bool>& allowed, int max_iter, int& iterations) {
  const auto m = a.rows();
  const auto ncols = a.cols();
  const double cscale = std::max(1.0, c.cwiseAbs().maxCoeff());
  const double rc_tol = 1e-12 * cscale;
  const double piv_tol = 1e-11;

  std::vector<bool> in_basis(ncols, false);
  for (int b : basis) in_basis[b] = true;

  for (; iterations < max_iter; ++iterations) {
    Mat bmat(m, m);
    Vec cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      bmat.col(i) = a.col(basis[i]);
      cb(i) = c(basis[i]);
    }
    Eigen::PartialPivLU<Mat> lu(bmat);
    const Vec xb = lu.solve(rhs);
    const Vec y = lu.transpose().solve(cb);

    int entering = -1;
    for (Eigen::Index j = 0; j < ncols; ++j) {
      if (!allowed[j] || in_basis[j]) continue;
      if (c(j) - y.dot(a.col(j)) < -rc_tol) {
        entering = static_cast<int>(j);
        break;
      }
    }
    if (entering < 0) return SimplexStatus::Optimal;

    const Vec dir = lu.solve(a.col(entering));
    const double dscale = std::max(1.0, dir.cwiseAbs().maxCoeff());
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (dir(i) <= piv_tol * dscale) continue;
      const double ratio = std::max(xb(i), 0.0) / dir(i);
      const bool tie = leave >= 0 && std::abs(ratio - best) <= 1e-14 * std::max(1.0, best);
      if (ratio < best && !tie) {
        best = ratio;
        leave = static_cast<int>(i);
      } else if (tie && basis[i] < basis[leave]) {
        leave = static_cast<int>(i);
      }
    }
    if (leave < 0) return SimplexStatus::Unbounded;
    in_basis[basis[leave]] = false;
    basis[leave] = entering;
    in_basis[entering] = true;
  }
  return SimplexStatus::IterationLimit;
}

}  // namespace

LpSolution lp_max(const LpProblem& problem, double tol) {
  const Mat& e = problem.constraints;
  const Vec& r = problem.objective;
  const auto q = e.rows();
  const auto n = e.cols();
  if (r.size() != n || n == 0) throw Error(ErrorCode::InvalidArgument, "lp_max: objective size mismatch");
  const Vec bound = problem.bound.size() == 0 ? Vec::Ones(q) : problem.bound;
  if (bound.size() != q || (q > 0 && bound.minCoeff() <= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lp_max: bounds must be positive, one per row");
  }
  if (!all_finite(e) || !r.allFinite()) throw Error(ErrorCode::InvalidArgument, "lp_max: non-finite input");

  // r must lie in the row space of E, otherwise the objective is unconstrained.
  const Mat rows = range_basis(e.transpose(), tol);
  const Vec off = r - rows * (rows.transpose() * r);
  if (off.norm() > tol * (1.0 + r.norm())) {
    throw Error(ErrorCode::Unbounded, "objective outside the row space of the constraints");
  }
  if (rows.cols() < n) {
    throw Error(ErrorCode::Degenerate, "constraint matrix has column rank " +
                                           std::to_string(rows.cols()) + " < " + std::to_string(n));
  }

  // Dual: min sum b_j (u+_j + u-_j)  s.t.  E^T (u+ - u-) = r,  u >= 0.
  // Rows with negative right-hand side are flipped for phase I.
  Vec sign = Vec::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i) < 0) sign(i) = -1.0;
  }
  const auto nstruct = 2 * q;
  Mat a(n, nstruct + n);
  a.leftCols(q) = sign.asDiagonal() * e.transpose();
  a.middleCols(q, q) = -a.leftCols(q);
  a.rightCols(n) = Mat::Identity(n, n);
  const Vec rhs = sign.cwiseProduct(r);

  std::vector<int> basis(n);
  for (Eigen::Index i = 0; i < n; ++i) basis[i] = static_cast<int>(nstruct + i);

  const int max_iter = 100 * static_cast<int>(nstruct + n) + 1000;
  int iterations = 0;

  Vec c1 = Vec::Zero(nstruct + n);
  c1.tail(n).setOnes();
  std::vector<bool> allowed(nstruct + n, true);
  if (run_simplex(a, rhs, c1, basis, allowed, max_iter, iterations) != SimplexStatus::Optimal) {
    throw Error(ErrorCode::NoConvergence, "lp_max: phase I did not terminate");
  }
  {
    Mat bmat(n, n);
    for (Eigen::Index i = 0; i < n; ++i) bmat.col(i) = a.col(basis[i]);
    const Vec xb = bmat.partialPivLu().solve(rhs);
    double art = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (basis[i] >= nstruct) art += std::abs(xb(i));
    }
    if (art > tol * (1.0 + r.norm())) {
      throw Error(ErrorCode::Unbounded, "lp_max: dual infeasible, objective unbounded");
    }
  }
  // Drive remaining artificial variables out of the basis (degenerate pivots).
  for (Eigen::Index i = 0; i < n; ++i) {
    if (basis[i] < nstruct) continue;
    Mat bmat(n, n);
    for (Eigen::Index k = 0; k < n; ++k) bmat.col(k) = a.col(basis[k]);
    Eigen::PartialPivLU<Mat> lu(bmat);
    int replacement = -1;
    double best = 1e-9;
    for (Eigen::Index j = 0; j < nstruct; ++j) {
      if (std::find(basis.begin(), basis.end(), static_cast<int>(j)) != basis.end()) continue;
      const double entry = std::abs(lu.solve(a.col(j))(i));
      if (entry > best) {
        best = entry;
        replacement = static_cast<int>(j);
      }
    }
    if (replacement < 0) throw Error(ErrorCode::Degenerate, "lp_max: redundant equality row");
    basis[i] = replacement;
  }

  Vec c2 = Vec::Zero(nstruct + n);
  c2.head(q) = bound;
  c2.segment(q, q) = bound;
  for (Eigen::Index j = nstruct; j < nstruct + n; ++j) allowed[j] = false;
  if (run_simplex(a, rhs, c2, basis, allowed, max_iter, iterations) != SimplexStatus::Optimal) {
    throw Error(ErrorCode::NoConvergence, "lp_max: phase II did not terminate");
  }

  Mat bmat(n, n);
  Vec cb(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    bmat.col(i) = a.col(basis[i]);
    cb(i) = c2(basis[i]);
  }
  Eigen::PartialPivLU<Mat> lu(bmat);
  const Vec xb = lu.solve(rhs);
  const Vec y = lu.transpose().solve(cb);

  LpSolution sol;
  sol.iterations = iterations;
  sol.x = sign.cwiseProduct(y);
  sol.dual = Vec::Zero(q);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int col = basis[i];
    if (col < q) {
      sol.dual(col) += xb(i);
    } else {
      sol.dual(col - q) -= xb(i);
    }
  }
  sol.optimum = r.dot(sol.x);
  sol.dual_value = bound.dot(sol.dual.cwiseAbs());
  sol.duality_gap = std::abs(sol.optimum - sol.dual_value);
  sol.primal_infeasibility =
      q > 0 ? std::max(0.0, ((e * sol.x).cwiseAbs() - bound).maxCoeff()) : 0.0;
  sol.dual_infeasibility = (e.transpose() * sol.dual - r).cwiseAbs().maxCoeff();
  return sol;
}

Vec vec(const Mat& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat sqrt_spd(const Mat& s) {
  const SymEig eig = sym_eig(s, 1e-8);
  if (eig.eigenvalues(0) <= 0.0) throw Error(ErrorCode::NotPositiveDefinite, "sqrt_spd");
  return eig.apply([](double x) { return std::sqrt(x); });
}

Mat inv_sqrt_spd(const Mat& s) {
  const SymEig eig = sym_eig(s, 1e-8);
  if (eig.eigenvalues(0) <= 0.0) throw Error(ErrorCode::NotPositiveDefinite, "inv_sqrt_spd");
  return eig.apply([](double x) { return 1.0 / std::sqrt(x); });
}

Mat log_spd(const Mat& s) {
  const SymEig eig = sym_eig(s, 1e-8);
  if (eig.eigenvalues(0) <= 0.0) throw Error(ErrorCode::NotPositiveDefinite, "log_spd");
  return eig.apply([](double x) { return std::log(x); });
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace redukit
