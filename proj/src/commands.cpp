#include "redukit/commands.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

namespace redukit {

using nlohmann::json;

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::NoConvergence ? kExitNoConvergence : kExitValidation;
}

namespace {

double rel(double value, double scale) { return value / std::max(1.0, scale); }

Subspace span_of_matrices(const std::vector<Mat>& mats, Eigen::Index mm) {
  Mat cols(mm, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vec(mats[i]);
  if (cols.cols() == 0 || cols.norm() == 0.0) return Subspace::zero(mm);
  return Subspace::span(cols);
}

std::vector<Mat> images(const Representation& rep, const Subspace& s) {
  std::vector<Mat> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(rep(s.basis.col(i)));
  return out;
}

Context make_context(const Scenario& sc, const CommandOptions& opts) {
  Scenario copy = sc;
  if (opts.rank_tol) copy.tolerances.rank = *opts.rank_tol;
  return build_context(copy);
}

std::uint64_t seed_of(const Scenario& sc, const CommandOptions& opts) {
  return opts.seed.value_or(sc.sampling.seed);
}

// Runs body with timing and error capture.
Report guarded(const std::string& command, const Scenario& sc, const CommandOptions& opts,
               const std::function<void(Report&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.scenario = sc.name;
  r.command = command;
  r.seed = seed_of(sc, opts);
  try {
    body(r);
  } catch (const Error& e) {
    r.exit_code = exit_code_for(e.code());
    r.results["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json residuals_json(const std::vector<NamedResidual>& items) {
  json out = json::array();
  for (const auto& it : items) {
    out.push_back({{"name", it.name}, {"value", it.value}, {"limit", it.limit}, {"ok", it.ok()}});
  }
  return out;
}

json certificate_json(const BoundCertificate& cert, const std::vector<int>& indices) {
  return {{"c_prime", cert.c_prime},
          {"c_norm", cert.c_norm},
          {"c_eff", cert.c_eff},
          {"coefficient_dim", cert.coefficient_dim},
          {"omega_indices", indices},
          {"lp",
           {{"dual", vector_to_json(cert.lp.dual)},
            {"x", vector_to_json(cert.lp.x)},
            {"dual_value", cert.lp.dual_value},
            {"duality_gap", cert.lp.duality_gap},
            {"primal_infeasibility", cert.lp.primal_infeasibility},
            {"dual_infeasibility", cert.lp.dual_infeasibility},
            {"iterations", cert.lp.iterations}}}};
}

struct ConstantRun {
  CoefficientSpaceData cs;
  std::vector<int> indices;
  BoundCertificate cert;
};

ConstantRun run_constant(const Context& ctx) {
  const Scenario& sc = ctx.scenario;
  const double tol = sc.tolerances.rank;
  ConstantRun run;
  run.cs = coefficient_space(ctx.comm, ctx.pair.h.space, sc.coefficients, tol);
  OmegaSet omega = ctx.omega;
  if (sc.reduce_omega) {
    OmegaReduction red = reduce_omega(run.cs, ctx.omega, tol);
    omega = std::move(red.omega);
    run.indices = std::move(red.indices);
  } else {
    for (std::size_t i = 0; i < omega.size(); ++i) run.indices.push_back(static_cast<int>(i));
  }
  run.cert = compute_constant(ctx.comm, ctx.ip, run.cs, omega, tol);
  return run;
}

}  // namespace

std::vector<NamedResidual> structural_checks(const Context& ctx) {
  const ReductivePair& pair = ctx.pair;
  return {
      {"g_closure", pair.g.closure_residual()},
      {"g_jacobi", pair.g.jacobi_residual()},
      {"h_closure", pair.h.closure_residual},
      {"z_g_closure", pair.z_g.closure_residual},
      {"representation", ctx.homomorphism_residual},
      {"theta_involution", involution_residual(pair.cartan)},
      {"theta_automorphism", automorphism_residual(pair.g, pair.cartan)},
      {"theta_stability_h", theta_stability_residual(pair.cartan, pair.h.space)},
      {"q_adjunction", adjunction_residual(pair.cartan, ctx.comm.rep, ctx.ip)},
  };
}

std::vector<NamedResidual> remark_suite(const Context& ctx) {
  const ReductivePair& pair = ctx.pair;
  const LieAlgebra& g = pair.g;
  const CartanStructure& cs = pair.cartan;
  const Representation& rep = ctx.comm.rep;
  const AdaptedInnerProduct& ip = ctx.ip;
  const int d = g.dim();
  const int m = rep.dim;
  const Eigen::Index mm = static_cast<Eigen::Index>(m) * m;
  auto pz = [&](const Mat& a) { return project_z(ctx.comm, a); };
  auto self_adjoint_defect = [&](const Mat& a) {
    const Mat qa = ip.q() * a;
    return rel((qa - qa.transpose()).norm(), qa.norm());
  };

  // z_perp in gl(V): range of I - pi_z on vectorized matrices.
  const Mat comp = Mat::Identity(mm, mm) - ctx.comm.projector;
  const Mat zperp_basis = comp.norm() > 0.0 ? range_basis(comp) : Mat(mm, 0);
  std::vector<Mat> z_elems, zperp_elems;
  for (int i = 0; i < ctx.comm.dim(); ++i) z_elems.push_back(ctx.comm.element(i));
  for (Eigen::Index i = 0; i < zperp_basis.cols(); ++i) zperp_elems.push_back(unvec(zperp_basis.col(i), m, m));

  std::vector<NamedResidual> out;

  // 1. theta preserves k, h and z_g.
  out.push_back({"theta_invariance_k_h_zg",
                 std::max({theta_stability_residual(cs, cs.k), theta_stability_residual(cs, pair.h.space),
                           theta_stability_residual(cs, pair.z_g.space)})});

  // 2. B- and B_theta-orthocomplements of z_g agree and are supplementary.
  {
    const Subspace perp_bt = orthocomplement(pair.z_g.space, cs.b_theta.gram);
    double v = subspace_distance(pair.z_g_perp, perp_bt);
    v += std::abs(pair.z_g.dim() + pair.z_g_perp.dim() - d);
    v += intersect(pair.z_g.space, pair.z_g_perp).dim();
    out.push_back({"z_g_perp_b_equals_b_theta_and_supplementary", v});
  }

  // 3. ad(h) preserves z_g_perp.
  {
    double v = 0.0;
    for (int i = 0; i < pair.h.dim(); ++i) {
      const Mat ad = g.ad(Vec(pair.h.space.basis.col(i)));
      for (int j = 0; j < pair.z_g_perp.dim(); ++j) {
        v = std::max(v, rel(pair.z_g_perp.distance(ad * pair.z_g_perp.basis.col(j)), ad.norm()));
      }
    }
    out.push_back({"ad_h_invariance_z_g_perp", v});
  }

  // 4. drho intertwines theta and theta_V.
  {
    double v = 0.0;
    for (int i = 0; i < d; ++i) {
      const Mat a = rep.drho[i];
      v = std::max(v, rel((rep(Vec(cs.theta.col(i))) - ip.theta_v(a)).norm(), a.norm()));
    }
    out.push_back({"drho_theta_equals_theta_v", v});
  }

  // 5. ad(drho h) preserves z_perp.
  {
    double v = 0.0;
    for (int i = 0; i < pair.h.dim(); ++i) {
      const Mat a = rep(Vec(pair.h.space.basis.col(i)));
      for (const Mat& z : zperp_elems) v = std::max(v, rel(pz(a * z - z * a).norm(), a.norm()));
    }
    out.push_back({"ad_drho_h_invariance_z_perp", v});
  }

  // 6. drho(z_g) in z and drho(z_g_perp) in z_perp.
  {
    double v = 0.0;
    for (const Mat& a : images(rep, pair.z_g.space)) v = std::max(v, rel((a - pz(a)).norm(), a.norm()));
    for (const Mat& a : images(rep, pair.z_g_perp)) v = std::max(v, rel(pz(a).norm(), a.norm()));
    out.push_back({"drho_z_g_in_z_and_z_g_perp_in_z_perp", v});
  }

  // 7. theta_V preserves drho(k), drho(z_g), drho(h), z and z_perp.
  {
    double v = 0.0;
    for (const Subspace* s : {&cs.k, &pair.z_g.space, &pair.h.space}) {
      const std::vector<Mat> imgs = images(rep, *s);
      const Subspace span = span_of_matrices(imgs, mm);
      for (const Mat& a : imgs) v = std::max(v, rel(span.distance(vec(ip.theta_v(a))), a.norm()));
    }
    for (const Mat& z : z_elems) {
      const Mat t = ip.theta_v(z);
      v = std::max(v, rel((t - pz(t)).norm(), z.norm()));
    }
    for (const Mat& z : zperp_elems) v = std::max(v, rel(pz(ip.theta_v(z)).norm(), z.norm()));
    out.push_back({"theta_v_invariance", v});
  }

  // 8. pi_z commutes with theta_V and keeps self-adjoint maps self-adjoint.
  {
    double v = 0.0;
    const Mat q_inv = ip.q().inverse();
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Mat e = Mat::Zero(m, m);
        e(i, j) = 1.0;
        v = std::max(v, (pz(ip.theta_v(e)) - ip.theta_v(pz(e))).norm());
        if (j >= i) {
          Mat s = e + e.transpose();
          const Mat a = q_inv * s;
          v = std::max(v, self_adjoint_defect(pz(a)));
        }
      }
    }
    out.push_back({"pi_z_commutes_with_theta_v_and_preserves_self_adjoint", v});
  }

  // 9. drho(k_perp) is self-adjoint.
  {
    double v = 0.0;
    for (const Mat& a : images(rep, cs.k_perp)) v = std::max(v, self_adjoint_defect(a));
    out.push_back({"drho_k_perp_self_adjoint", v});
  }
  return out;
}

Report cmd_check(const Scenario& sc, const CommandOptions& opts) {
  return guarded("check", sc, opts, [&](Report& r) {
    const Context ctx = make_context(sc, opts);
    const auto structural = structural_checks(ctx);
    const auto remarks = remark_suite(ctx);
    bool ok = true;
    for (const auto& c : structural) ok &= c.ok();
    for (const auto& c : remarks) ok &= c.ok();
    r.results["dims"] = {{"g", ctx.pair.g.dim()},
                         {"h", ctx.pair.h.dim()},
                         {"k", ctx.pair.cartan.k.dim()},
                         {"k_perp", ctx.pair.cartan.k_perp.dim()},
                         {"z_g", ctx.pair.z_g.dim()},
                         {"p", ctx.pair.p.dim()},
                         {"k_perp_cap_z_g", ctx.pair.k_cap_z.dim()},
                         {"V", ctx.comm.rep.dim},
                         {"z", ctx.comm.dim()}};
    r.results["structural"] = residuals_json(structural);
    r.results["remarks"] = residuals_json(remarks);
    r.results["q"] = matrix_to_json(ctx.ip.q());
    r.results["passed"] = ok;
    if (!ok) {
      r.exit_code = kExitValidation;
      json failed = json::array();
      for (const auto* list : {&structural, &remarks}) {
        for (const auto& c : *list) {
          if (!c.ok()) failed.push_back(c.name);
        }
      }
      r.results["error"] = {{"code", std::string(to_string(ErrorCode::ValidationFailed))}, {"failed", failed}};
    }
  });
}

Report cmd_constant(const Scenario& sc, const CommandOptions& opts) {
  return guarded("constant", sc, opts, [&](Report& r) {
    const Context ctx = make_context(sc, opts);
    const ConstantRun run = run_constant(ctx);
    json basis = json::array();
    for (const auto& [a, b] : run.cs.basis_index) basis.push_back({a, b});
    r.results["coefficient_dim"] = run.cs.dim;
    r.results["coefficient_basis"] = basis;
    r.results["pi_r"] = vector_to_json(run.cs.pi_r);
    r.results["omega_size"] = ctx.omega.size();
    r.results["certificate"] = certificate_json(run.cert, run.indices);
  });
}

Report cmd_verify(const Scenario& sc, const CommandOptions& opts) {
  return guarded("verify", sc, opts, [&](Report& r) {
    const Context ctx = make_context(sc, opts);
    const ConstantRun run = run_constant(ctx);
    const long samples = opts.samples.value_or(sc.sampling.count);
    const VerifyReport vr = verify_bound(ctx.pair, ctx.comm.rep, ctx.ip, run.cert, samples, sc.sampling.radius,
                                         r.seed, opts.threads);
    r.results["certificate"] = certificate_json(run.cert, run.indices);
    r.results["samples"] = vr.samples;
    r.results["radius"] = sc.sampling.radius;
    r.results["violations"] = vr.violations;
    r.results["min_ratio"] = vr.min_ratio;
    r.results["threshold"] = vr.threshold;
    if (vr.violations > 0) r.exit_code = kExitViolation;
  });
}

Report cmd_mostow(const Scenario& sc, const CommandOptions& opts) {
  return guarded("mostow", sc, opts, [&](Report& r) {
    const Context ctx = make_context(sc, opts);
    const ReductivePair& pair = ctx.pair;
    const double tol = sc.tolerances.newton;
    json rows = json::array();
    auto record = [&](const Mat& g, const Vec* p_true, const Vec* z_true) {
      const MostowCoords mc = mostow_factor(pair, g, tol);
      json row = {{"element", matrix_to_json(g)},
                  {"k_factor", matrix_to_json(mc.k_factor)},
                  {"p", vector_to_json(mc.p_component)},
                  {"z", vector_to_json(mc.z_component)},
                  {"residual", mc.residual},
                  {"iterations", mc.iterations}};
      if (p_true != nullptr) {
        row["p_error"] = pair.g.element(mc.p_component - *p_true).norm();
        row["z_error"] = pair.g.element(mc.z_component - *z_true).norm();
      }
      rows.push_back(std::move(row));
    };
    if (opts.element) {
      record(*opts.element, nullptr, nullptr);
    } else {
      std::mt19937_64 rng(r.seed);
      for (int i = 0; i < sc.mostow.count; ++i) {
        const Vec kappa = sample_ball(pair.g, pair.cartan.k, sc.mostow.radius, rng);
        const Vec p = sample_ball(pair.g, pair.p, sc.mostow.radius, rng);
        const Vec z = sample_ball(pair.g, pair.k_cap_z, sc.mostow.radius, rng);
        record(mostow_compose(pair, expm(pair.g.element(kappa)), p, z), &p, &z);
      }
    }
    r.results["factorizations"] = rows;
  });
}

Report cmd_focusing(const Scenario& sc, const CommandOptions& opts) {
  return guarded("focusing", sc, opts, [&](Report& r) {
    const Context ctx = make_context(sc, opts);
    const FocusingSettings& fs = sc.focusing;
    Vec v = opts.v.value_or(fs.v);
    if (v.size() == 0) v = Vec::Unit(ctx.comm.rep.dim, 0);
    if (v.size() != ctx.comm.rep.dim) throw Error(ErrorCode::InvalidArgument, "focusing: v has wrong length");
    FocusingOptions fo;
    fo.grid = fs.grid;
    fo.threshold_a = fs.threshold_a;
    fo.threshold_b = fs.threshold_b;
    const FocusingReport rep =
        focusing_harness(ctx.pair, ctx.comm.rep, ctx.ip, v, ctx.omega.size() ? &ctx.omega : nullptr,
                         fs.families, fo);
    r.results["v"] = vector_to_json(v);
    r.results["span_dim"] = rep.span.dim();
    r.results["omega_basis"] = rep.span.omega_basis;
    r.results["spans_agree"] = rep.span.spans_agree;
    r.results["fixator_dim"] = rep.fix.f_algebra.dim();
    r.results["fixator_basis"] = matrix_to_json(rep.fix.f_algebra.space.basis);
    json fams = json::array();
    bool violation = false;
    for (const FamilyVerdict& fv : rep.verdicts) {
      json f = {{"name", fv.name},
                {"grid", fv.grid},
                {"in_y", fv.in_y},
                {"a_holds", fv.a_holds},
                {"max_coeff", fv.max_coeff},
                {"a_profile", fv.a_profile},
                {"b_verdict", std::string(to_string(fv.b_verdict))},
                {"b_distance_profile", fv.b_distance_profile},
                {"b_implies_a", fv.b_implies_a}};
      if (fv.equivalence_checked) f["equivalence_holds"] = fv.equivalence_holds;
      violation |= !fv.b_implies_a || (fv.equivalence_checked && !fv.equivalence_holds);
      fams.push_back(std::move(f));
    }
    r.results["families"] = fams;
    if (violation) r.exit_code = kExitViolation;
  });
}

Report run_command(const std::string& name, const Scenario& sc, const CommandOptions& opts) {
  if (name == "check") return cmd_check(sc, opts);
  if (name == "constant") return cmd_constant(sc, opts);
  if (name == "verify") return cmd_verify(sc, opts);
  if (name == "mostow") return cmd_mostow(sc, opts);
  if (name == "focusing") return cmd_focusing(sc, opts);
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + name + "'");
}

}  // namespace redukit
