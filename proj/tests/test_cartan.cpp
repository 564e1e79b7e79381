#include "fixtures.hpp"
#include "redukit/cartan.hpp"
#include "redukit/error.hpp"

#include <gtest/gtest.h>

using namespace redukit;
using fixtures::elem;

TEST(StandardTheta, Sl2Decomposition) {
  const LieAlgebra g(fixtures::sl2());
  const CartanStructure cs = standard_theta(g);
  EXPECT_EQ(cs.k.dim(), 1);       // so(2)
  EXPECT_EQ(cs.k_perp.dim(), 2);  // symmetric traceless
  EXPECT_LT(involution_residual(cs), 1e-14);
  EXPECT_LT(automorphism_residual(g, cs), 1e-14);
  // B_theta = -B(., theta .) is positive definite: diag(8, 4, 4) in (H, E, F).
  Mat expect = Mat::Zero(3, 3);
  expect.diagonal() << 8, 4, 4;
  EXPECT_LT((cs.b_theta.gram - expect).norm(), 1e-12);
}

TEST(StandardTheta, Sl3Decomposition) {
  const LieAlgebra g(fixtures::sl3());
  const CartanStructure cs = standard_theta(g);
  EXPECT_EQ(cs.k.dim(), 3);
  EXPECT_EQ(cs.k_perp.dim(), 5);
  EXPECT_LT(automorphism_residual(g, cs), 1e-13);
}

TEST(StandardTheta, RejectsBorelSubalgebra) {
  const LieAlgebra b({elem(2, 0, 0) - elem(2, 1, 1), elem(2, 0, 1)});
  try {
    standard_theta(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTransposeClosed);
  }
}

TEST(StandardTheta, RejectsCenterOfGl2) {
  const LieAlgebra g({elem(2, 0, 0), elem(2, 1, 1), elem(2, 0, 1), elem(2, 1, 0)});
  try {
    standard_theta(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
  }
}

TEST(ThetaStability, TorusStableUnipotentNot) {
  const LieAlgebra g(fixtures::sl2());
  const CartanStructure cs = standard_theta(g);
  EXPECT_TRUE(is_theta_stable(cs, Subspace::span(Vec::Unit(3, 0))));
  EXPECT_FALSE(is_theta_stable(cs, Subspace::span(Vec::Unit(3, 1))));
}

TEST(AdaptedInnerProduct, StandardRepGivesIdentity) {
  const LieAlgebra g(fixtures::sl3());
  const CartanStructure cs = standard_theta(g);
  const AdaptedInnerProduct ip = adapt_inner_product(cs, defining_rep(g));
  EXPECT_LT((ip.q() - Mat::Identity(3, 3)).norm(), 1e-12);
}

TEST(AdaptedInnerProduct, TwistedRepRecoversGram) {
  const LieAlgebra g(fixtures::sl2());
  const CartanStructure cs = standard_theta(g);
  Mat a(2, 2);
  a << 2, 1, 0, 1;
  Representation rep{2, {}};
  for (const Mat& x : g.basis()) rep.drho.push_back(a * x * a.inverse());
  const AdaptedInnerProduct ip = adapt_inner_product(cs, rep);
  Mat expect = (a * a.transpose()).inverse();
  expect *= 2.0 / expect.trace();
  EXPECT_LT((ip.q() - expect).norm(), 1e-10);
  EXPECT_LT(adjunction_residual(cs, rep, ip), 1e-10);
  // theta_V extends theta on the image.
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT((ip.theta_v(rep.drho[i]) - rep(cs.theta.col(i))).norm(), 1e-10);
  }
}

TEST(AdaptedInnerProduct, AmbiguityPolicy) {
  const LieAlgebra g(fixtures::sl2());
  const CartanStructure cs = standard_theta(g);
  Representation rep{4, {}};
  for (const Mat& x : g.basis()) {
    Mat d = Mat::Zero(4, 4);
    d.topLeftCorner(2, 2) = x;
    d.bottomRightCorner(2, 2) = x;
    rep.drho.push_back(d);
  }
  try {
    adapt_inner_product(cs, rep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSolution);
  }
  const AdaptedInnerProduct ip = adapt_inner_product(cs, rep, AmbiguityPolicy::NearestIdentity);
  EXPECT_LT((ip.q() - Mat::Identity(4, 4)).norm(), 1e-10);
}

TEST(AdaptedInnerProduct, ZeroRepRejected) {
  const LieAlgebra g(fixtures::sl2());
  const CartanStructure cs = standard_theta(g);
  Representation rep{0, {Mat(0, 0), Mat(0, 0), Mat(0, 0)}};
  try {
    adapt_inner_product(cs, rep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroRep);
  }
}

TEST(AdaptedInnerProduct, NormsAndAdjoint) {
  Mat q(2, 2);
  q << 2, 0.5, 0.5, 1;
  const AdaptedInnerProduct ip(q);
  std::mt19937_64 rng(2);
  const Mat a = fixtures::gaussian(rng, 2, 2);
  const Vec x = fixtures::gaussian(rng, 2, 1), y = fixtures::gaussian(rng, 2, 1);
  EXPECT_NEAR(ip.inner(a * x, y), ip.inner(x, ip.adjoint(a) * y), 1e-12);
  // Operator norm: sup ||Ax|| / ||x|| attained, never exceeded.
  const double op = ip.operator_norm(a);
  for (int k = 0; k < 200; ++k) {
    const Vec v = fixtures::gaussian(rng, 2, 1);
    EXPECT_LE(ip.norm(a * v), op * ip.norm(v) * (1 + 1e-12));
  }
}
