#include "redukit/reductive_pair.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace redukit {

Subalgebra centralizer(const LieAlgebra& g, const Subspace& h, double tol) {
  const int d = g.dim();
  Subalgebra out;
  if (h.dim() == 0) {
    out.space = Subspace::whole(d);
  } else {
    Mat stacked(static_cast<Eigen::Index>(h.dim()) * d, d);
    for (int i = 0; i < h.dim(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = g.ad(h.basis.col(i));
    out.space = Subspace{null_space(stacked, tol)};
  }
  out.closure_residual = subalgebra_closure_residual(g, out.space);
  return out;
}

ReductivePair build_pair(LieAlgebra g, Subalgebra h, CartanStructure cartan, double tol) {
  const double stab = theta_stability_residual(cartan, h.space);
  if (stab > tol) {
    throw Error(ErrorCode::NotThetaStable, "theta moves h by " + std::to_string(stab));
  }
  Subalgebra z_g = centralizer(g, h.space, tol);
  Subspace z_g_perp = orthocomplement(z_g.space, cartan.killing.gram, tol);
  Subspace p = intersect(cartan.k_perp, z_g_perp, tol);
  Subspace k_cap_z = intersect(cartan.k_perp, z_g.space, tol);
  return ReductivePair{std::move(g), std::move(h), std::move(cartan), std::move(z_g),
                       std::move(z_g_perp), std::move(p), std::move(k_cap_z)};
}

CommutantData commutant(const Representation& rep, const Subspace& h, double tol) {
  const int m = rep.dim;
  if (m < 1) throw Error(ErrorCode::ZeroRep, "representation has dimension 0");
  const Eigen::Index mm = static_cast<Eigen::Index>(m) * m;
  const Mat id = Mat::Identity(m, m);

  Mat stacked(static_cast<Eigen::Index>(h.dim()) * mm, mm);
  for (int i = 0; i < h.dim(); ++i) {
    const Mat a = rep(h.basis.col(i));
    // vec(AZ - ZA) = (I (x) A - A^T (x) I) vec(Z), column-major vec
    Mat op = Mat::Zero(mm, mm);
    for (int c = 0; c < m; ++c) {
      op.block(static_cast<Eigen::Index>(c) * m, static_cast<Eigen::Index>(c) * m, m, m) += a;
      for (int r = 0; r < m; ++r) {
        op.block(static_cast<Eigen::Index>(r) * m, static_cast<Eigen::Index>(c) * m, m, m) -= a(c, r) * id;
      }
    }
    stacked.middleRows(static_cast<Eigen::Index>(i) * mm, mm) = op;
  }
  const Mat z = null_space(stacked, tol);

  auto transposed = [m](const Vec& v) { return vec(unvec(v, m, m).transpose()); };

  const Eigen::Index k = z.cols();
  Mat gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Vec ti = transposed(z.col(i));
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = ti.dot(z.col(j));
  }
  gram = 0.5 * (gram + gram.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
  const Vec& mu = eig.eigenvalues();
  if (k > 0 && mu.cwiseAbs().minCoeff() <= tol * mu.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::Degenerate, "trace form is degenerate on the commutant");
  }

  CommutantData out;
  out.rep = rep;
  out.signs.resize(k);
  out.z_basis.resize(mm, k);
  out.projector = Mat::Zero(mm, mm);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.signs(i) = mu(i) > 0 ? 1.0 : -1.0;
    out.z_basis.col(i) = z * eig.eigenvectors().col(i) / std::sqrt(std::abs(mu(i)));
    out.projector += out.signs(i) * out.z_basis.col(i) * transposed(out.z_basis.col(i)).transpose();
  }
  return out;
}

Mat project_z(const CommutantData& comm, const Mat& a) {
  const int m = comm.rep.dim;
  return unvec(comm.projector * vec(a), m, m);
}

namespace {

// B_theta-orthogonal projection coefficients onto span(basis).
Vec form_coefficients(const Mat& basis, const Mat& gram, const Vec& x) {
  if (basis.cols() == 0) return Vec(0);
  const Mat g = basis.transpose() * gram * basis;
  return g.ldlt().solve(basis.transpose() * gram * x);
}

struct PolarLog {
  Mat orthogonal;  // U V^T
  Mat log_abs;     // V log(Sigma) V^T
};

PolarLog polar_log(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0) throw Error(ErrorCode::InvalidArgument, "mostow_factor: singular element");
  const Mat& v = svd.matrixV();
  return PolarLog{svd.matrixU() * v.transpose(), v * s.array().log().matrix().asDiagonal() * v.transpose()};
}

}  // namespace

Mat mostow_compose(const ReductivePair& pair, const Mat& k, const Vec& p, const Vec& z) {
  return k * expm(pair.g.element(p)) * expm(pair.g.element(z));
}

MostowCoords mostow_factor(const ReductivePair& pair, const Mat& g, double tol, int max_iter) {
  const LieAlgebra& alg = pair.g;
  const int n = alg.ambient_dim();
  if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::InvalidArgument, "mostow_factor: wrong size");
  if (!all_finite(g)) throw Error(ErrorCode::InvalidArgument, "mostow_factor: non-finite entries");

  const Mat& kz = pair.k_cap_z.basis;
  const Mat& bt = pair.cartan.b_theta.gram;

  // For Z = kz * w, the k_cap_z component of log|g exp(-Z)|; zero at the solution.
  auto residual = [&](const Vec& w, PolarLog* keep) {
    const Mat z = alg.element(kz * w);
    PolarLog pl = polar_log(g * expm(-z));
    const Vec coords = alg.coordinates(pl.log_abs);
    const Vec r = form_coefficients(kz, bt, coords);
    if (keep) *keep = std::move(pl);
    return r;
  };

  MostowCoords out;
  PolarLog pl = polar_log(g);
  out.membership_residual = alg.coordinate_residual(pl.log_abs);
  const double scale = 1.0 + pl.log_abs.norm();
  // Seed Z with the k_cap_z part of log|g| (polar decomposition).
  Vec w = form_coefficients(kz, bt, alg.coordinates(pl.log_abs));

  const double newton_tol = 1e-13 * scale;
  Vec r = residual(w, &pl);
  int it = 0;
  for (; it < max_iter && r.norm() > newton_tol; ++it) {
    const Eigen::Index dim = w.size();
    Mat jac(dim, dim);
    const double h = 1e-6 * std::max(1.0, w.norm());
    for (Eigen::Index j = 0; j < dim; ++j) {
      Vec wp = w, wm = w;
      wp(j) += h;
      wm(j) -= h;
      jac.col(j) = (residual(wp, nullptr) - residual(wm, nullptr)) / (2.0 * h);
    }
    const Vec step = jac.colPivHouseholderQr().solve(-r);
    double t = 1.0;
    Vec w_next = w + step;
    Vec r_next = residual(w_next, nullptr);
    while (r_next.norm() > (1.0 - 1e-4 * t) * r.norm() && t > 1e-6) {
      t *= 0.5;
      w_next = w + t * step;
      r_next = residual(w_next, nullptr);
    }
    if (r_next.norm() >= r.norm()) break;  // no further progress at machine precision
    w = w_next;
    r = residual(w, &pl);
  }

  const Vec log_coords = alg.coordinates(pl.log_abs);
  out.iterations = it;
  out.z_component = kz * w;
  out.p_component = pair.p.basis * form_coefficients(pair.p.basis, bt, log_coords);
  out.k_factor = pl.orthogonal;
  out.p_matrix = alg.element(out.p_component);
  out.z_matrix = alg.element(out.z_component);
  out.residual = (g - out.k_factor * expm(out.p_matrix) * expm(out.z_matrix)).norm();
  if (out.residual > tol * (1.0 + g.norm())) {
    throw Error(ErrorCode::NoConvergence, "mostow_factor: residual " + std::to_string(out.residual) +
                                              " after " + std::to_string(it) + " Newton steps");
  }
  return out;
}

Mat mostow_jacobian(const ReductivePair& pair, const Vec& kappa, const Vec& p, const Vec& z) {
  const LieAlgebra& alg = pair.g;
  const int d = alg.dim();
  Mat dirs(d, pair.cartan.k.dim() + pair.p.dim() + pair.k_cap_z.dim());
  dirs << pair.cartan.k.basis, pair.p.basis, pair.k_cap_z.basis;
  const int nk = pair.cartan.k.dim();
  const int np = pair.p.dim();

  auto forward = [&](const Vec& dk, const Vec& dp, const Vec& dz) {
    return Mat(expm(alg.element(kappa + dk)) * expm(alg.element(p + dp)) * expm(alg.element(z + dz)));
  };
  const Mat base = forward(Vec::Zero(d), Vec::Zero(d), Vec::Zero(d));
  const Mat base_inv = base.inverse();
  const double h = 1e-6;
  Mat jac(d, dirs.cols());
  for (Eigen::Index c = 0; c < dirs.cols(); ++c) {
    Vec dk = Vec::Zero(d), dp = Vec::Zero(d), dz = Vec::Zero(d);
    Vec& slot = c < nk ? dk : (c < nk + np ? dp : dz);
    slot = h * dirs.col(c);
    const Mat plus = forward(dk, dp, dz);
    const Mat minus = forward(-dk, -dp, -dz);
    jac.col(c) = alg.coordinates(base_inv * (plus - minus) / (2.0 * h));
  }
  return jac;
}

Vec sample_ball(const LieAlgebra& g, const Subspace& s, double radius, std::mt19937_64& rng) {
  const int k = s.dim();
  if (k == 0 || radius <= 0.0) return Vec::Zero(s.ambient());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec b(k);
  for (int i = 0; i < k; ++i) b(i) = normal(rng);
  const double nb = b.norm();
  const double rad = radius * std::pow(unif(rng), 1.0 / k);
  b *= nb > 0 ? rad / nb : 0.0;
  // Frobenius norm of the matrix: a^T G a with G = U^T F U = L L^T.
  const Mat gs = s.basis.transpose() * g.frobenius_gram() * s.basis;
  const Eigen::LLT<Mat> llt(gs);
  const Vec a = llt.matrixU().solve(b);
  return s.basis * a;
}

YSample sample_y(const ReductivePair& pair, double radius, std::mt19937_64& rng) {
  if (radius < 0.0) throw Error(ErrorCode::InvalidArgument, "sample_y: negative radius");
  YSample out;
  out.kappa = sample_ball(pair.g, pair.cartan.k, radius, rng);
  out.p = sample_ball(pair.g, pair.p, radius, rng);
  out.element.factors = {out.kappa, out.p};
  out.matrix = evaluate(defining_rep(pair.g), out.element);
  return out;
}

YSample sample_y(const ReductivePair& pair, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_y(pair, radius, rng);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace redukit
