#include "redukit/focusing.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace redukit {

OrbitSpanData span_hv(const Representation& rep, const Subspace& h, const Vec& v, const OmegaSet* omega,
                      double tol) {
  OrbitSpanData out;
  out.v = v;
  const int m = rep.dim;
  if (v.size() != m) throw Error(ErrorCode::InvalidArgument, "span_hv: vector has wrong dimension");

  std::vector<Mat> ops;
  for (int i = 0; i < h.dim(); ++i) ops.push_back(rep(h.basis.col(i)));

  Mat basis = v.norm() > 0.0 ? range_basis(v, tol) : Mat(m, 0);
  for (int round = 0; round <= m; ++round) {
    Mat cand(m, basis.cols() * (1 + static_cast<Eigen::Index>(ops.size())));
    cand.leftCols(basis.cols()) = basis;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      cand.middleCols(basis.cols() * static_cast<Eigen::Index>(i + 1), basis.cols()) = ops[i] * basis;
    }
    Mat next = cand.cols() > 0 && cand.norm() > 0.0 ? range_basis(cand, tol) : Mat(m, 0);
    const bool stable = next.cols() == basis.cols();
    basis = std::move(next);
    if (stable) break;
  }
  out.span_basis = basis;

  for (const Mat& op : ops) {
    if (basis.cols() == 0) break;
    const Mat img = op * basis;
    const double r = (img - basis * (basis.transpose() * img)).norm() / std::max(1.0, op.norm());
    out.invariance_residual = std::max(out.invariance_residual, r);
  }

  if (omega != nullptr && omega->size() > 0 && basis.cols() > 0) {
    std::vector<Vec> orbit;
    for (const Mat& img : omega->images) orbit.push_back(img * v);
    const RankSelection sel = rank_basis(orbit, tol);
    out.omega_basis = sel.selected;
    out.omega_vectors.resize(m, sel.rank);
    for (int k = 0; k < sel.rank; ++k) out.omega_vectors.col(k) = orbit[sel.selected[k]];
    const Subspace ov = Subspace::span(out.omega_vectors, tol);
    out.spans_agree = ov.dim() == out.dim() && containment_residual(Subspace{basis}, ov) <= 1e-8;
  } else {
    out.spans_agree = basis.cols() == 0;
  }
  return out;
}

FixatorData fixator(const LieAlgebra& g, const Representation& rep, const Mat& vectors, double tol) {
  const int d = g.dim();
  const int m = rep.dim;
  FixatorData out;
  Mat constraints(static_cast<Eigen::Index>(m) * vectors.cols(), d);
  for (Eigen::Index w = 0; w < vectors.cols(); ++w) {
    for (int i = 0; i < d; ++i) constraints.block(w * m, i, m, 1) = rep.drho[i] * vectors.col(w);
  }
  const Mat kernel = vectors.cols() == 0 ? Mat(Mat::Identity(d, d)) : null_space(constraints, tol);
  out.f_algebra = make_subalgebra(g, kernel, tol);
  for (int j = 0; j < out.f_algebra.dim(); ++j) {
    const Mat x = rep(out.f_algebra.space.basis.col(j));
    for (Eigen::Index w = 0; w < vectors.cols(); ++w) {
      out.annihilation_residual = std::max(out.annihilation_residual, (x * vectors.col(w)).norm());
    }
  }
  return out;
}

GroupElement Family::at(double t) const {
  GroupElement g;
  for (const auto& f : factors) g.factors.push_back(f.offset + t * f.slope);
  return g;
}

std::vector<double> default_grid() { return {1, 2, 4, 8, 16, 32, 64}; }

TestAResult test_a(const Representation& rep, const AdaptedInnerProduct& ip, const OrbitSpanData& span,
                   const Family& family, const std::vector<double>& grid, double threshold) {
  TestAResult out;
  const Mat& basis = span.test_basis();
  for (double t : grid) {
    const Mat y = evaluate(rep, family.at(t));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < basis.cols(); ++i) worst = std::max(worst, ip.norm(y * basis.col(i)));
    out.profile.push_back(worst);
    out.max_coeff = std::max(out.max_coeff, worst);
  }
  out.holds = out.max_coeff <= threshold;
  return out;
}

std::string_view to_string(BVerdict v) {
  switch (v) {
    case BVerdict::Holds: return "holds";
    case BVerdict::Fails: return "fails";
    case BVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct PointResult {
  double value;
  Vec c;
  bool converged;
};

// BFGS on c -> log ||y exp(F(c))||_F^2 with central-difference gradients.
PointResult minimize_norm(const LieAlgebra& g, const Mat& fix_basis, const Mat& y, Vec c,
                          const TestBOptions& options) {
  const double ynorm = y.norm();
  const Mat ys = y / ynorm;
  const double offset = 2.0 * std::log(ynorm);
  auto f = [&](const Vec& x) {
    const double n = (ys * expm(g.element(fix_basis * x))).norm();
    return n > 0.0 ? 2.0 * std::log(n) + offset : -std::numeric_limits<double>::infinity();
  };
  const Eigen::Index k = c.size();
  auto grad = [&](const Vec& x) {
    Vec gr(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
      Vec xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      gr(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return gr;
  };

  double fc = f(c);
  if (k == 0) return {std::exp(0.5 * fc), c, true};
  Vec gc = grad(c);
  Mat hinv = Mat::Identity(k, k);
  bool converged = false;
  for (int it = 0; it < options.budget; ++it) {
    if (gc.norm() <= options.gradient_tol) {
      converged = true;
      break;
    }
    Vec dir = -hinv * gc;
    if (dir.dot(gc) >= 0.0) {
      hinv.setIdentity();
      dir = -gc;
    }
    double step = 1.0;
    Vec cn = c + dir;
    double fn = f(cn);
    while (!(fn <= fc + 1e-4 * step * gc.dot(dir)) && step > 1e-12) {
      step *= 0.5;
      cn = c + step * dir;
      fn = f(cn);
    }
    // Expand while the objective keeps dropping (flat, concave tails).
    while (fn < fc && step < 1e8) {
      const Vec ce = c + 2.0 * step * dir;
      const double fe = f(ce);
      if (!(fe < fn)) break;
      step *= 2.0;
      cn = ce;
      fn = fe;
    }
    if (!(fn < fc)) {
      // No decrease at working precision: stationary up to gradient noise.
      converged = gc.norm() <= 1e-4;
      break;
    }
    const Vec gn = grad(cn);
    const Vec s = cn - c;
    const Vec yv = gn - gc;
    const double sy = s.dot(yv);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Mat id = Mat::Identity(k, k);
      hinv = (id - rho * s * yv.transpose()) * hinv * (id - rho * yv * s.transpose()) + rho * s * s.transpose();
    }
    c = cn;
    fc = fn;
    gc = gn;
  }
  return {std::exp(0.5 * fc), c, converged};
}

}  // namespace

TestBResult test_b(const LieAlgebra& g, const FixatorData& fix, const Family& family,
                   const std::vector<double>& grid, double threshold, const TestBOptions& options) {
  TestBResult out;
  const Representation def = defining_rep(g);
  const Mat& fb = fix.f_algebra.space.basis;
  Vec c = Vec::Zero(fb.cols());
  bool any_fail = false, any_open = false;
  for (double t : grid) {
    const Mat y = evaluate(def, family.at(t));
    PointResult best = minimize_norm(g, fb, y, c, options);
    if (c.norm() > 0.0) {
      // Also try a cold start; keep the lower minimum.
      PointResult cold = minimize_norm(g, fb, y, Vec::Zero(fb.cols()), options);
      if (cold.value < best.value) best = cold;
    }
    c = best.c;
    out.profile.push_back(best.value);
    BVerdict pv = best.value <= threshold ? BVerdict::Holds
                                          : (best.converged ? BVerdict::Fails : BVerdict::Inconclusive);
    out.point_verdicts.push_back(pv);
    any_fail |= pv == BVerdict::Fails;
    any_open |= pv == BVerdict::Inconclusive;
  }
  out.verdict = any_fail ? BVerdict::Fails : (any_open ? BVerdict::Inconclusive : BVerdict::Holds);
  return out;
}

bool family_in_y(const ReductivePair& pair, const Family& family, const std::vector<double>& grid, double tol) {
  const Representation def = defining_rep(pair.g);
  std::vector<double> probes = {0.5, 1.0};
  for (double t : grid) {
    const Mat y = evaluate(def, family.at(t));
    Eigen::JacobiSVD<Mat> svd(y);
    const Vec& s = svd.singularValues();
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) <= 1e6) probes.push_back(t);
  }
  for (double t : probes) {
    try {
      const MostowCoords mc = mostow_factor(pair, evaluate(def, family.at(t)), 1e-8);
      if (pair.g.element(mc.z_component).norm() > tol) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

FocusingReport focusing_harness(const ReductivePair& pair, const Representation& rep, const AdaptedInnerProduct& ip,
                                const Vec& v, const OmegaSet* omega, const std::vector<Family>& families,
                                const FocusingOptions& options) {
  FocusingReport out;
  out.span = span_hv(rep, pair.h.space, v, omega);
  out.fix = fixator(pair.g, rep, out.span.test_basis());
  for (const Family& fam : families) {
    FamilyVerdict fv;
    fv.name = fam.name;
    fv.grid = options.grid;
    fv.in_y = family_in_y(pair, fam, options.grid);
    const TestAResult a = test_a(rep, ip, out.span, fam, options.grid, options.threshold_a);
    fv.a_holds = a.holds;
    fv.max_coeff = a.max_coeff;
    fv.a_profile = a.profile;
    const TestBResult b = test_b(pair.g, out.fix, fam, options.grid, options.threshold_b, options.b);
    fv.b_verdict = b.verdict;
    fv.b_distance_profile = b.profile;
    fv.b_implies_a = !(b.verdict == BVerdict::Holds && !a.holds);
    if (fv.in_y && b.verdict != BVerdict::Inconclusive) {
      fv.equivalence_checked = true;
      fv.equivalence_holds = a.holds == (b.verdict == BVerdict::Holds);
    }
    out.verdicts.push_back(std::move(fv));
  }
  return out;
}

}  // namespace redukit
