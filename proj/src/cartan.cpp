#include "redukit/cartan.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <string>

namespace redukit {

CartanStructure standard_theta(const LieAlgebra& alg, double tol) {
  const int d = alg.dim();
  CartanStructure cs;
  cs.theta.resize(d, d);
  for (int j = 0; j < d; ++j) {
    const Mat t = -alg.basis()[j].transpose();
    if (alg.coordinate_residual(t) > tol * (1.0 + t.norm())) {
      throw Error(ErrorCode::NotTransposeClosed,
                  "transpose of basis element " + std::to_string(j) + " leaves the span");
    }
    cs.theta.col(j) = alg.coordinates(t);
  }

  cs.killing = killing_form(alg);
  Mat bt = -cs.killing.gram * cs.theta;
  const double scale = std::max(bt.norm(), 1e-300);
  if (symmetry_residual(bt) > tol * scale) {
    throw Error(ErrorCode::NotPositiveDefinite, "B_theta is not symmetric");
  }
  bt = 0.5 * (bt + bt.transpose());
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(bt).eigenvalues();
  if (ev.minCoeff() <= tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "B_theta has smallest eigenvalue " + std::to_string(ev.minCoeff()));
  }
  cs.b_theta = BilinearForm{bt, FormKind::BTheta};

  const Mat id = Mat::Identity(d, d);
  cs.k = Subspace{null_space(cs.theta - id, tol)};
  cs.k_perp = Subspace{null_space(cs.theta + id, tol)};
  return cs;
}

double involution_residual(const CartanStructure& cs) {
  const auto d = cs.theta.rows();
  return (cs.theta * cs.theta - Mat::Identity(d, d)).norm();
}

double automorphism_residual(const LieAlgebra& alg, const CartanStructure& cs) {
  double worst = 0.0;
  const int d = alg.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Vec lhs = cs.theta * alg.ad(i).col(j);
      const Vec rhs = alg.bracket(cs.theta.col(i), cs.theta.col(j));
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  }
  return worst;
}

double theta_stability_residual(const CartanStructure& cs, const Subspace& sub) {
  double worst = 0.0;
  for (int j = 0; j < sub.dim(); ++j) worst = std::max(worst, sub.distance(cs.theta * sub.basis.col(j)));
  return worst;
}

bool is_theta_stable(const CartanStructure& cs, const Subspace& sub, double tol) {
  return theta_stability_residual(cs, sub) <= tol;
}

AdaptedInnerProduct::AdaptedInnerProduct(Mat q) : q_(std::move(q)) {
  q_inv_ = q_.inverse();
  sqrt_q_ = sqrt_spd(q_);
  inv_sqrt_q_ = inv_sqrt_spd(q_);
}

AdaptedInnerProduct adapt_inner_product(const CartanStructure& cs, const Representation& rep,
                                        AmbiguityPolicy policy, double tol) {
  const int m = rep.dim;
  if (m < 1) throw Error(ErrorCode::ZeroRep, "representation has dimension 0");
  const int d = static_cast<int>(rep.drho.size());

  // Symmetric unknowns S_(i<=j) = E_ij + E_ji (E_ii on the diagonal).
  std::vector<Mat> sym_basis;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      Mat s = Mat::Zero(m, m);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      sym_basis.push_back(s);
    }
  }
  const auto nsym = static_cast<Eigen::Index>(sym_basis.size());
  Mat system(static_cast<Eigen::Index>(d) * m * m, nsym);
  for (int x = 0; x < d; ++x) {
    const Mat theta_image = rep(cs.theta.col(x));
    const Mat& n = rep.drho[x];
    for (Eigen::Index s = 0; s < nsym; ++s) {
      const Mat& sm = sym_basis[s];
      system.block(static_cast<Eigen::Index>(x) * m * m, s, m * m, 1) =
          vec(sm * theta_image + n.transpose() * sm);
    }
  }
  const Mat solutions = null_space(system, tol);
  if (solutions.cols() == 0) throw Error(ErrorCode::NoSolution, "no symmetric solution of the adjunction system");

  auto to_matrix = [&](const Vec& c) {
    Mat out = Mat::Zero(m, m);
    for (Eigen::Index s = 0; s < nsym; ++s) out += c(s) * sym_basis[s];
    return out;
  };

  Mat q;
  if (solutions.cols() == 1) {
    q = to_matrix(solutions.col(0));
  } else if (policy == AmbiguityPolicy::NearestIdentity) {
    Mat vs(m * m, solutions.cols());
    for (Eigen::Index c = 0; c < solutions.cols(); ++c) vs.col(c) = vec(to_matrix(solutions.col(c)));
    const Vec coeffs = vs.colPivHouseholderQr().solve(vec(Mat::Identity(m, m)));
    q = to_matrix(solutions * coeffs);
  } else {
    throw Error(ErrorCode::NoSolution, "adapted inner product is not unique up to scale (" +
                                           std::to_string(solutions.cols()) + " independent solutions)");
  }
  if (q.trace() < 0) q = -q;
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(q).eigenvalues();
  if (ev.minCoeff() <= tol * ev.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::NoSolution, "solution of the adjunction system is not positive definite");
  }
  q *= static_cast<double>(m) / q.trace();
  return AdaptedInnerProduct(q);
}

double adjunction_residual(const CartanStructure& cs, const Representation& rep,
                           const AdaptedInnerProduct& ip) {
  double worst = 0.0;
  const Mat& q = ip.q();
  for (std::size_t x = 0; x < rep.drho.size(); ++x) {
    const Mat& n = rep.drho[x];
    const Mat r = q * rep(cs.theta.col(static_cast<Eigen::Index>(x))) + n.transpose() * q;
    worst = std::max(worst, r.norm() / std::max(1.0, q.norm() * n.norm()));
  }
  return worst;
}

}  // namespace redukit
