#include "redukit/liealg.hpp"

#include "redukit/error.hpp"

#include <algorithm>
#include <string>

namespace redukit {

namespace {

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace

LieAlgebra::LieAlgebra(std::vector<Mat> basis, double tol) : basis_(std::move(basis)) {
  if (basis_.empty()) throw Error(ErrorCode::ValidationFailed, "Lie algebra basis is empty");
  ambient_ = static_cast<int>(basis_.front().rows());
  if (ambient_ == 0) throw Error(ErrorCode::ValidationFailed, "zero ambient dimension");
  for (const auto& x : basis_) {
    if (x.rows() != ambient_ || x.cols() != ambient_) {
      throw Error(ErrorCode::ValidationFailed, "basis matrices must all be n x n");
    }
    if (!all_finite(x)) throw Error(ErrorCode::ValidationFailed, "non-finite basis entry");
  }

  const int d = dim();
  vec_basis_.resize(static_cast<Eigen::Index>(ambient_) * ambient_, d);
  for (int i = 0; i < d; ++i) vec_basis_.col(i) = vec(basis_[i]);
  if (rank_basis_columns(vec_basis_, tol).rank != d) {
    throw Error(ErrorCode::ValidationFailed, "basis matrices are linearly dependent");
  }
  qr_.compute(vec_basis_);
  frobenius_gram_ = vec_basis_.transpose() * vec_basis_;

  ad_.assign(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Mat br = commutator(basis_[i], basis_[j]);
      const Vec c = coordinates(br);
      const double res = (vec(br) - vec_basis_ * c).norm() / std::max(1.0, br.norm());
      closure_residual_ = std::max(closure_residual_, res);
      ad_[i].col(j) = c;
    }
  }
  if (closure_residual_ > tol) {
    throw Error(ErrorCode::ValidationFailed,
                "basis span is not closed under bracket (residual " + std::to_string(closure_residual_) + ")");
  }
}

Mat LieAlgebra::element(const Vec& coeffs) const {
  Mat out = Mat::Zero(ambient_, ambient_);
  for (int i = 0; i < dim(); ++i) out += coeffs(i) * basis_[i];
  return out;
}

Vec LieAlgebra::coordinates(const Mat& x) const { return qr_.solve(vec(x)); }

double LieAlgebra::coordinate_residual(const Mat& x) const {
  return (vec(x) - vec_basis_ * coordinates(x)).norm();
}

Vec LieAlgebra::bracket(const Vec& a, const Vec& b) const { return ad(a) * b; }

Mat LieAlgebra::ad(const Vec& x) const {
  Mat out = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) out += x(i) * ad_[i];
  return out;
}

double LieAlgebra::jacobi_residual() const {
  // ad is a homomorphism iff Jacobi holds: ad([X_i, X_j]) = [ad X_i, ad X_j].
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      const Mat lhs = ad(Vec(ad_[i].col(j)));
      const Mat rhs = commutator(ad_[i], ad_[j]);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  }
  return worst;
}

double subalgebra_closure_residual(const LieAlgebra& alg, const Subspace& space) {
  double worst = 0.0;
  for (int a = 0; a < space.dim(); ++a) {
    for (int b = a + 1; b < space.dim(); ++b) {
      const Vec br = alg.bracket(space.basis.col(a), space.basis.col(b));
      worst = std::max(worst, space.distance(br) / std::max(1.0, br.norm()));
    }
  }
  return worst;
}

Subalgebra make_subalgebra(const LieAlgebra& alg, const Mat& vectors, double tol) {
  if (vectors.rows() != alg.dim()) {
    throw Error(ErrorCode::ValidationFailed, "subalgebra coefficient vectors have wrong length");
  }
  Subalgebra out{Subspace::span(vectors, tol), 0.0};
  out.closure_residual = subalgebra_closure_residual(alg, out.space);
  if (out.closure_residual > tol) {
    throw Error(ErrorCode::ValidationFailed,
                "subspace is not closed under bracket (residual " + std::to_string(out.closure_residual) + ")");
  }
  return out;
}

Mat Representation::operator()(const Vec& coeffs) const {
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < drho.size(); ++i) out += coeffs(static_cast<Eigen::Index>(i)) * drho[i];
  return out;
}

Representation adjoint_rep(const LieAlgebra& alg) {
  Representation rep;
  rep.dim = alg.dim();
  for (int i = 0; i < alg.dim(); ++i) rep.drho.push_back(alg.ad(i));
  return rep;
}

Representation defining_rep(const LieAlgebra& alg) { return Representation{alg.ambient_dim(), alg.basis()}; }

double homomorphism_residual(const LieAlgebra& alg, const Representation& rep) {
  double worst = 0.0;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = 0; j < alg.dim(); ++j) {
      const Mat lhs = rep(Vec(alg.ad(i).col(j)));
      const Mat rhs = commutator(rep.drho[i], rep.drho[j]);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  }
  return worst;
}

BilinearForm killing_form(const LieAlgebra& alg) {
  const int d = alg.dim();
  Mat gram(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = alg.ad(i).cwiseProduct(alg.ad(j).transpose()).sum();
    }
  }
  return BilinearForm{gram, FormKind::Killing};
}

BilinearForm trace_form(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "trace_form needs m >= 1");
  const int mm = m * m;
  Mat gram = Mat::Zero(mm, mm);
  // Tr(E_ij E_kl) = [j == k][i == l]
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i * m + j, j * m + i) = 1.0;
  }
  return BilinearForm{gram, FormKind::Trace};
}

CenterAndDerived center_and_derived(const LieAlgebra& alg, double tol) {
  const int d = alg.dim();
  Mat stacked(static_cast<Eigen::Index>(d) * d, d);
  Mat brackets(d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = alg.ad(i);
    brackets.middleCols(static_cast<Eigen::Index>(i) * d, d) = alg.ad(i);
  }
  CenterAndDerived out;
  out.center.space = Subspace{null_space(stacked, tol)};
  out.center.closure_residual = subalgebra_closure_residual(alg, out.center.space);
  out.derived.space = Subspace::span(brackets, tol);
  out.derived.closure_residual = subalgebra_closure_residual(alg, out.derived.space);
  return out;
}

Subalgebra reductive_split(const LieAlgebra& alg, const Subalgebra& h, double tol) {
  const auto cd = center_and_derived(alg, tol);
  Subalgebra out;
  out.space = intersect(sum(h.space, cd.center.space, tol), cd.derived.space, tol);
  out.closure_residual = subalgebra_closure_residual(alg, out.space);
  return out;
}

bool is_semisimple(const LieAlgebra& alg, double tol) {
  const Mat& gram = killing_form(alg).gram;
  const double scale = gram.cwiseAbs().maxCoeff();
  if (scale == 0.0) return false;
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(gram / scale).eigenvalues();
  return ev.cwiseAbs().minCoeff() > tol;
}

GroupElement GroupElement::inverse() const {
  GroupElement out;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.factors.push_back(-*it);
  return out;
}

Mat evaluate(const Representation& rep, const GroupElement& g) {
  Mat out = Mat::Identity(rep.dim, rep.dim);
  for (const auto& f : g.factors) out = out * expm(rep(f));
  return out;
}

}  // namespace redukit
