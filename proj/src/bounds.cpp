#include "redukit/bounds.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace redukit {

CvxResult cvx_check(const Mat& s, const Mat& pi) {
  if (s.rows() != s.cols() || pi.rows() != s.rows() || pi.cols() != s.cols()) {
    throw Error(ErrorCode::InvalidArgument, "cvx_check: shape mismatch");
  }
  if (pi.norm() <= 1e-12) throw Error(ErrorCode::ZeroProjector, "projector is zero");
  const double scale = std::max(1.0, pi.norm());
  if (symmetry_residual(pi) > 1e-8 * scale || (pi * pi - pi).norm() > 1e-8 * scale) {
    throw Error(ErrorCode::InvalidArgument, "cvx_check: pi is not an orthogonal projector");
  }
  CvxResult out;
  out.rank = static_cast<int>(std::lround(pi.trace()));
  if (out.rank == 0) throw Error(ErrorCode::ZeroProjector, "projector has rank 0");
  const Mat exp_s = sym_eig(s).apply([](double x) { return std::exp(x); });
  out.lhs = (exp_s * pi).trace();
  out.rhs = out.rank * std::exp((s * pi).trace() / out.rank);
  out.holds = out.lhs >= out.rhs * (1.0 - 1e-9);
  return out;
}

ExpansionResult expansion_check(const ReductivePair& pair, const CommutantData& comm,
                                const AdaptedInnerProduct& ip, const Vec& p_elt, double tol) {
  const double dist = pair.p.distance(p_elt);
  if (dist > tol * (1.0 + p_elt.norm())) {
    throw Error(ErrorCode::MembershipViolation, "element is at distance " + std::to_string(dist) + " from p");
  }
  ExpansionResult out;
  out.projected = project_z(comm, expm(comm.rep(p_elt)));
  const Mat qm = ip.q() * out.projected;
  out.self_adjoint_residual = (qm - qm.transpose()).norm() / std::max(1.0, qm.norm());
  Mat w = ip.whiten(out.projected);
  w = 0.5 * (w + w.transpose());
  out.eigenvalues = Eigen::SelfAdjointEigenSolver<Mat>(w).eigenvalues();
  out.min_eigenvalue = out.eigenvalues.minCoeff();
  return out;
}

OmegaSet make_omega(const Representation& rep, std::vector<GroupElement> elements) {
  OmegaSet out;
  out.elements = std::move(elements);
  for (const auto& e : out.elements) {
    out.images.push_back(evaluate(rep, e));
    out.inverse_images.push_back(evaluate(rep, e.inverse()));
  }
  return out;
}

OmegaSet omega_subset(const OmegaSet& omega, const std::vector<int>& indices) {
  OmegaSet out;
  for (int i : indices) {
    out.elements.push_back(omega.elements.at(i));
    out.images.push_back(omega.images.at(i));
    out.inverse_images.push_back(omega.inverse_images.at(i));
  }
  return out;
}

double coefficient_value(const Mat& rho_h, const Mat& rho_h_inv, int a, int b) {
  const auto m = static_cast<int>(rho_h.rows());
  const int i = a / m, j = a % m, k = b / m, l = b % m;
  return rho_h(i, k) * rho_h_inv(l, j);
}

CoefficientSpaceData coefficient_space(const CommutantData& comm, const Subspace& h,
                                       const CoefficientSampling& sampling, double tol) {
  const Representation& rep = comm.rep;
  const int m = rep.dim;
  const int mm = m * m;
  const int candidates = mm * mm;
  const int count = sampling.count > 0 ? sampling.count : std::min(4 * candidates, 2000);

  CoefficientSpaceData out;
  out.m = m;
  std::mt19937_64 rng(sampling.seed);
  std::uniform_int_distribution<int> nfactors(1, std::max(1, sampling.max_factors));
  std::uniform_real_distribution<double> coeff(-sampling.coefficient_range, sampling.coefficient_range);
  for (int s = 0; s < count; ++s) {
    GroupElement g;
    const int nf = nfactors(rng);
    for (int f = 0; f < nf; ++f) {
      Vec c = Vec::Zero(h.ambient());
      for (int b = 0; b < h.dim(); ++b) c += coeff(rng) * h.basis.col(b);
      g.factors.push_back(c);
    }
    out.sample_images.push_back(evaluate(rep, g));
    out.sample_inverse_images.push_back(evaluate(rep, g.inverse()));
  }

  Mat all(count, candidates);
  for (int s = 0; s < count; ++s) {
    for (int a = 0; a < mm; ++a) {
      for (int b = 0; b < mm; ++b) {
        all(s, a * mm + b) = coefficient_value(out.sample_images[s], out.sample_inverse_images[s], a, b);
      }
    }
  }
  const RankSelection sel = rank_basis_columns(all, tol);
  out.dim = sel.rank;
  out.sample_values.resize(count, sel.rank);
  out.pi_r.resize(sel.rank);
  for (int k = 0; k < sel.rank; ++k) {
    const int col = sel.selected[k];
    const int a = col / mm, b = col % mm;
    out.basis_index.emplace_back(a, b);
    out.sample_values.col(k) = all.col(col);
    Mat eb = Mat::Zero(m, m);
    eb(b / m, b % m) = 1.0;
    out.pi_r(k) = project_z(comm, eb)(a / m, a % m);
  }
  return out;
}

Mat evaluation_matrix(const CoefficientSpaceData& cs, const OmegaSet& omega) {
  Mat e(static_cast<Eigen::Index>(omega.size()), cs.dim);
  for (std::size_t j = 0; j < omega.size(); ++j) {
    for (int k = 0; k < cs.dim; ++k) {
      const auto [a, b] = cs.basis_index[k];
      e(static_cast<Eigen::Index>(j), k) = coefficient_value(omega.images[j], omega.inverse_images[j], a, b);
    }
  }
  return e;
}

Vec express_coefficient(const CoefficientSpaceData& cs, const Mat& phi, const Mat& g, double* residual) {
  const auto n = static_cast<Eigen::Index>(cs.sample_images.size());
  Vec f(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    f(s) = phi.cwiseProduct(cs.sample_images[s] * g * cs.sample_inverse_images[s]).sum();
  }
  const Vec x = cs.sample_values.colPivHouseholderQr().solve(f);
  if (residual) *residual = (cs.sample_values * x - f).norm() / std::max(1.0, f.norm());
  return x;
}

double pi_r_value(const CoefficientSpaceData& cs, const Vec& coeffs) { return cs.pi_r.dot(coeffs); }

double pi_r_of_coefficient(const CommutantData& comm, const Mat& phi, const Mat& g) {
  return phi.cwiseProduct(project_z(comm, g)).sum();
}

bool condition_star(const CoefficientSpaceData& cs, const OmegaSet& omega, double tol) {
  if (omega.size() == 0) return cs.dim == 0;
  return rank_basis_columns(evaluation_matrix(cs, omega).transpose(), tol).rank == cs.dim;
}

OmegaReduction reduce_omega(const CoefficientSpaceData& cs, const OmegaSet& omega, double tol) {
  if (omega.size() == 0) throw Error(ErrorCode::StarViolated, "Omega is empty");
  const RankSelection sel = rank_basis_columns(evaluation_matrix(cs, omega).transpose(), tol);
  if (sel.rank < cs.dim) {
    throw Error(ErrorCode::StarViolated, "evaluations at Omega have rank " + std::to_string(sel.rank) +
                                             " < dim C = " + std::to_string(cs.dim));
  }
  return OmegaReduction{omega_subset(omega, sel.selected), sel.selected};
}

BoundCertificate compute_constant(const CommutantData& comm, const AdaptedInnerProduct& ip,
                                  const CoefficientSpaceData& cs, const OmegaSet& omega, double tol) {
  if (comm.rep.dim == 0) throw Error(ErrorCode::ZeroRep, "dim V = 0");
  if (!condition_star(cs, omega, tol)) {
    throw Error(ErrorCode::StarViolated, "evaluation at Omega is not injective on C(Ad_rho)");
  }
  BoundCertificate cert;
  cert.coefficient_dim = cs.dim;
  cert.omega = omega;
  cert.lp = lp_max(LpProblem{cs.pi_r, evaluation_matrix(cs, omega), Vec()}, tol);
  cert.c_prime = cert.lp.optimum;
  for (const auto& inv : omega.inverse_images) cert.c_norm = std::max(cert.c_norm, ip.operator_norm(inv));
  cert.c_eff = 1.0 / (cert.c_norm * cert.c_prime);
  return cert;
}

double orbit_sup_norm(const AdaptedInnerProduct& ip, const OmegaSet& omega, const Mat& rho_y, const Vec& v) {
  double best = 0.0;
  for (const auto& img : omega.images) best = std::max(best, ip.norm(rho_y * (img * v)));
  return best;
}

VerifyReport verify_bound(const ReductivePair& pair, const Representation& rep, const AdaptedInnerProduct& ip,
                          const BoundCertificate& cert, long samples, double radius, std::uint64_t seed,
                          int threads) {
  std::vector<double> ratios(static_cast<std::size_t>(std::max(0L, samples)));
  const int m = rep.dim;

  auto work = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      std::mt19937_64 rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
      const YSample y = sample_y(pair, radius, rng);
      std::normal_distribution<double> normal(0.0, 1.0);
      Vec u(m);
      for (int c = 0; c < m; ++c) u(c) = normal(rng);
      const Vec v = ip.unwhitening() * (u / u.norm());
      ratios[static_cast<std::size_t>(i)] = orbit_sup_norm(ip, cert.omega, evaluate(rep, y.element), v) / ip.norm(v);
    }
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nthreads = static_cast<int>(std::min<long>(nthreads, std::max(1L, samples)));
  if (nthreads <= 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (samples + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const long b = t * chunk, e = std::min(samples, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  VerifyReport out;
  out.samples = samples;
  out.threshold = cert.c_eff * (1.0 - 1e-6);
  out.min_ratio = samples > 0 ? *std::min_element(ratios.begin(), ratios.end()) : 0.0;
  for (double r : ratios) {
    if (r < out.threshold) ++out.violations;
  }
  return out;
}

}  // namespace redukit
