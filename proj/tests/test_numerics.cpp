#include "fixtures.hpp"
#include "redukit/error.hpp"
#include "redukit/numerics.hpp"

#include <gtest/gtest.h>

using namespace redukit;

TEST(SymEig, DiagonalSpectrumAscending) {
  Mat s(3, 3);
  s << 3, 0, 0, 0, -1, 0, 0, 0, 2;
  const SymEig e = sym_eig(s);
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(2), 3.0, 1e-14);
  EXPECT_EQ(e.projectors.size(), 3u);
  EXPECT_LT((e.reconstruct() - s).norm(), 1e-13);
}

TEST(SymEig, RepeatedEigenvalueMergesIntoOneProjector) {
  Mat s = Mat::Identity(4, 4);
  s(3, 3) = 5.0;
  const SymEig e = sym_eig(s);
  ASSERT_EQ(e.projectors.size(), 2u);
  EXPECT_EQ(e.projectors[0].rank, 3);
  EXPECT_NEAR(e.projectors[0].eigenvalue, 1.0, 1e-14);
}

TEST(SymEig, RejectsNonSymmetric) {
  Mat s(2, 2);
  s << 1, 2, 0, 1;
  try {
    sym_eig(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSymmetric);
  }
}

TEST(SymEig, RandomReconstruction) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat s = fixtures::random_symmetric(rng, 6, 2.0);
    const SymEig e = sym_eig(s);
    EXPECT_LT((e.reconstruct() - s).norm(), 1e-12 * (1 + s.norm()));
    Mat sum = Mat::Zero(6, 6);
    for (const auto& p : e.projectors) sum += p.projector;
    EXPECT_LT((sum - Mat::Identity(6, 6)).norm(), 1e-12);
  }
}

TEST(Expm, ZeroAndNilpotentAndRotation) {
  EXPECT_EQ(expm(Mat::Zero(3, 3)), Mat(Mat::Identity(3, 3)));
  Mat n = fixtures::elem(2, 0, 1) * 2.5;
  Mat expect = Mat::Identity(2, 2) + n;
  EXPECT_LT((expm(n) - expect).norm(), 1e-14);
  Mat j(2, 2);
  j << 0, -1, 1, 0;
  const double t = 0.7;
  Mat rot(2, 2);
  rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  EXPECT_LT((expm(t * j) - rot).norm(), 1e-14);
}

TEST(NullSpace, RankDeficient) {
  Mat a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  const Mat k = null_space(a);
  EXPECT_EQ(k.cols(), 2);
  EXPECT_LT((a * k).norm(), 1e-12);
  EXPECT_LT((k.transpose() * k - Mat::Identity(2, 2)).norm(), 1e-12);
}

TEST(NullSpace, FullRankAndEmpty) {
  EXPECT_EQ(null_space(Mat::Identity(3, 3)).cols(), 0);
  EXPECT_EQ(null_space(Mat(0, 4)).cols(), 4);
}

TEST(RankBasis, InOrderSelection) {
  std::vector<Vec> v = {Vec::Unit(3, 0), 2 * Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 0) + Vec::Unit(3, 1),
                        Vec::Unit(3, 2)};
  const RankSelection sel = rank_basis(v);
  EXPECT_EQ(sel.rank, 3);
  EXPECT_EQ(sel.selected, (std::vector<int>{0, 2, 4}));
}

TEST(RankBasis, IgnoresTinyComponents) {
  std::vector<Vec> v = {Vec::Unit(2, 0), Vec::Unit(2, 0) + 1e-13 * Vec::Unit(2, 1)};
  EXPECT_EQ(rank_basis(v).rank, 1);
}

TEST(Vec, RoundTripColumnMajor) {
  Mat a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  const Vec v = vec(a);
  EXPECT_EQ(v(1), 4.0);
  EXPECT_EQ(unvec(v, 2, 3), a);
}

TEST(Spd, SqrtAndLog) {
  Mat s(2, 2);
  s << 4, 1, 1, 3;
  const Mat r = sqrt_spd(s);
  EXPECT_LT((r * r - s).norm(), 1e-13);
  EXPECT_LT((inv_sqrt_spd(s) * r - Mat::Identity(2, 2)).norm(), 1e-13);
  EXPECT_LT((expm(log_spd(s)) - s).norm(), 1e-12);
  EXPECT_NEAR(spectral_norm(Mat::Identity(3, 3) * 2.0), 2.0, 1e-15);
}

namespace {

// l1 norm of E^{-T} r: the value of the dual when E is square and invertible.
double square_lp_oracle(const Mat& e, const Vec& r) { return e.transpose().fullPivLu().solve(r).lpNorm<1>(); }

}  // namespace

TEST(LpMax, TorusThreePointProblem) {
  const double e2 = std::exp(2.0);
  Mat e(3, 3);
  e << 1, 1 / e2, e2, 1, 1, 1, 1, e2, 1 / e2;
  Vec r = Vec::Unit(3, 0);
  const LpSolution s = lp_max({r, e, Vec()});
  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  EXPECT_NEAR(s.optimum, coth1 * coth1, 1e-12);
  EXPECT_NEAR(s.optimum, square_lp_oracle(e, r), 1e-12);
  EXPECT_LE(s.duality_gap, 1e-8);
  EXPECT_LE(s.primal_infeasibility, 1e-12);
  EXPECT_NEAR(s.dual(0), s.dual(2), 1e-12);
}

TEST(LpMax, BoxConstraints) {
  // max x1 + 2 x2 with |x1| <= 1, |x2| <= 3.
  Mat e = Mat::Identity(2, 2);
  Vec r(2);
  r << 1, 2;
  Vec b(2);
  b << 1, 3;
  const LpSolution s = lp_max({r, e, b});
  EXPECT_NEAR(s.optimum, 7.0, 1e-12);
  EXPECT_NEAR(s.x(1), 3.0, 1e-12);
}

TEST(LpMax, RedundantRowsAndNegativeObjective) {
  Mat e(4, 2);
  e << 1, 0, 0, 1, 1, 1, 1, -1;
  Vec r(2);
  r << -1, 0.5;
  const LpSolution s = lp_max({r, e, Vec()});
  EXPECT_LE(s.duality_gap, 1e-10);
  EXPECT_LE(s.primal_infeasibility, 1e-12);
  EXPECT_LE(s.dual_infeasibility, 1e-12);
  // Brute force over a fine grid of the feasible polytope.
  double best = -1e9;
  for (int i = -400; i <= 400; ++i) {
    for (int j = -400; j <= 400; ++j) {
      Vec x(2);
      x << i / 400.0, j / 400.0;
      if ((e * x).cwiseAbs().maxCoeff() <= 1 + 1e-12) best = std::max(best, r.dot(x));
    }
  }
  EXPECT_NEAR(s.optimum, best, 1e-2);
  EXPECT_GE(s.optimum, best - 1e-12);
}

TEST(LpMax, RandomInstancesMatchDualValue) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const int q = n + trial % 4;
    const Mat e = fixtures::gaussian(rng, q, n);
    const Vec r = fixtures::gaussian(rng, n, 1);
    const LpSolution s = lp_max({r, e, Vec()});
    EXPECT_LE(s.duality_gap, 1e-8 * (1 + s.optimum));
    EXPECT_LE(s.primal_infeasibility, 1e-9);
    EXPECT_LE(s.dual_infeasibility, 1e-9);
    if (q == n) EXPECT_NEAR(s.optimum, square_lp_oracle(e, r), 1e-8 * (1 + s.optimum));
  }
}

TEST(LpMax, UnboundedWhenObjectiveLeavesRowSpace) {
  Mat e(1, 2);
  e << 1, 0;
  Vec r(2);
  r << 0, 1;
  try {
    lp_max({r, e, Vec()});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Unbounded);
  }
}

TEST(LpMax, DegenerateColumnRank) {
  Mat e(2, 2);
  e << 1, 1, 2, 2;
  Vec r(2);
  r << 1, 1;
  try {
    lp_max({r, e, Vec()});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::Degenerate);
  }
}
