#include "fixtures.hpp"
#include "redukit/error.hpp"
#include "redukit/liealg.hpp"

#include <gtest/gtest.h>

using namespace redukit;
using fixtures::elem;

TEST(LieAlgebra, Sl2StructureConstants) {
  const LieAlgebra g(fixtures::sl2());
  // [H, E] = 2E, [H, F] = -2F, [E, F] = H.
  EXPECT_DOUBLE_EQ(g.structure_constant(0, 1, 1), 2.0);
  EXPECT_DOUBLE_EQ(g.structure_constant(0, 2, 2), -2.0);
  EXPECT_DOUBLE_EQ(g.structure_constant(1, 2, 0), 1.0);
  EXPECT_LT(g.jacobi_residual(), 1e-14);
  EXPECT_LT(g.closure_residual(), 1e-14);
}

TEST(LieAlgebra, BracketMatchesCommutator) {
  const LieAlgebra g(fixtures::sl3());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec a = fixtures::gaussian(rng, 8, 1), b = fixtures::gaussian(rng, 8, 1);
    const Mat x = g.element(a), y = g.element(b);
    EXPECT_LT((g.element(g.bracket(a, b)) - (x * y - y * x)).norm(), 1e-12);
  }
}

TEST(LieAlgebra, RejectsNonClosedSpan) {
  // span{E12, E21} is not closed: [E12, E21] = H.
  try {
    LieAlgebra g({elem(2, 0, 1), elem(2, 1, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
  }
}

TEST(LieAlgebra, RejectsDependentBasis) {
  EXPECT_THROW(LieAlgebra({elem(2, 0, 1), 2 * elem(2, 0, 1)}), Error);
}

TEST(KillingForm, Sl2Gram) {
  const BilinearForm b = killing_form(LieAlgebra(fixtures::sl2()));
  Mat expect(3, 3);
  expect << 8, 0, 0, 0, 0, 4, 0, 4, 0;
  EXPECT_LT((b.gram - expect).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(KillingForm, Sl3IsSixTimesTrace) {
  const LieAlgebra g(fixtures::sl3());
  const BilinearForm b = killing_form(g);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      EXPECT_NEAR(b.gram(i, j), 6.0 * (g.basis()[i] * g.basis()[j]).trace(), 1e-10);
    }
  }
}

TEST(TraceForm, ElementaryBasis) {
  const BilinearForm t = trace_form(2);
  // Tr(E_ij E_kl) = [j == k][i == l]; E12 has index 1, E21 index 2.
  EXPECT_EQ(t.gram(1, 2), 1.0);
  EXPECT_EQ(t.gram(0, 0), 1.0);
  EXPECT_EQ(t.gram(1, 1), 0.0);
}

TEST(Representation, AdjointIsHomomorphism) {
  const LieAlgebra g(fixtures::sl3());
  EXPECT_LT(homomorphism_residual(g, adjoint_rep(g)), 1e-12);
  EXPECT_LT(homomorphism_residual(g, defining_rep(g)), 1e-12);
}

TEST(Representation, BrokenRepDetected) {
  const LieAlgebra g(fixtures::sl2());
  Representation r = defining_rep(g);
  r.drho[0] = 2.0 * r.drho[0];
  EXPECT_GT(homomorphism_residual(g, r), 0.1);
}

TEST(CenterAndDerived, Gl2) {
  const LieAlgebra g({elem(2, 0, 0), elem(2, 1, 1), elem(2, 0, 1), elem(2, 1, 0)});
  const CenterAndDerived cd = center_and_derived(g);
  EXPECT_EQ(cd.center.dim(), 1);
  EXPECT_EQ(cd.derived.dim(), 3);
  EXPECT_FALSE(is_semisimple(g));
  EXPECT_TRUE(is_semisimple(LieAlgebra(fixtures::sl2())));
}

TEST(ReductiveSplit, DiagonalTorusOfGl2) {
  const LieAlgebra g({elem(2, 0, 0), elem(2, 1, 1), elem(2, 0, 1), elem(2, 1, 0)});
  Mat h(4, 1);
  h << 1, 0, 0, 0;  // E11
  const Subalgebra split = reductive_split(g, make_subalgebra(g, h));
  // (span{E11} + center) cap sl(2) = span{E11 - E22}.
  ASSERT_EQ(split.dim(), 1);
  Vec x = split.space.basis.col(0);
  EXPECT_NEAR(x(0), -x(1), 1e-12);
}

TEST(GroupElement, InverseEvaluates) {
  const LieAlgebra g(fixtures::sl3());
  const Representation r = defining_rep(g);
  std::mt19937_64 rng(9);
  GroupElement ge{{fixtures::gaussian(rng, 8, 1), fixtures::gaussian(rng, 8, 1)}};
  EXPECT_LT((evaluate(r, ge) * evaluate(r, ge.inverse()) - Mat::Identity(3, 3)).norm(), 1e-10);
}
