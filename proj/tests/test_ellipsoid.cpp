#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "crawford/ellipsoid.hpp"
#include "crawford/verify.hpp"
#include "test_util.hpp"

using namespace crawford;

namespace {

struct Setup {
  SdpInstance inst;
  CertifiedBall ball;
};

Setup setup(const ComplexMatrix& C) {
  Setup s;
  s.inst = build_instance(hermitian_split(C), frobenius_ceiling(C));
  s.ball = certified_ball(s.inst, C);
  return s;
}

ComplexMatrix diag_pm1() {
  ComplexMatrix C(2);
  C(0, 0) = GaussianRational(1);
  C(1, 1) = GaussianRational(-1);
  return C;
}

double min_eig(const BlockDiagSymmetric<double>& Z) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : Z.blocks) m = std::min(m, symmetric_min_eigenvalue(b));
  return m;
}

} // namespace

TEST(CertifiedBall, WorkedExample) {
  const auto s = setup(fixtures::example_matrix());
  EXPECT_EQ(s.ball.trace_center, GaussianRational(3, 1));
  EXPECT_EQ(s.ball.inner_radius, Rational(1, 2));
  EXPECT_EQ(s.ball.outer_radius, 40);
  SymmetricMatrix<Rational> S(2);
  S.set(0, 0, 11);
  S.set(0, 1, 1);
  S.set(1, 1, 5);
  EXPECT_EQ(s.ball.S, S);
  const SymmetricMatrix<Rational> Y = Rational(1, 2) * SymmetricMatrix<Rational>::identity(4);
  EXPECT_EQ(s.ball.center, BlockDiagSymmetric<Rational>(Y, S, 1));
}

TEST(CertifiedBall, Identity) {
  const auto s = setup(ComplexMatrix::identity(2));
  SymmetricMatrix<Rational> S(2);
  S.set(0, 0, 4);
  S.set(1, 1, 2);
  EXPECT_EQ(s.ball.S, S);
  EXPECT_EQ(s.ball.outer_radius, 20);
  EXPECT_THROW(certified_ball(s.inst, ComplexMatrix::identity(3)), InvalidArgument);
}

TEST(CertifiedBall, CenterSatisfiesEveryEqualityExactly) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto C = fixtures::random_gaussian_integer(n, 5, rng);
    if (C.is_zero()) continue;
    const auto s = setup(C);
    for (std::size_t k = 0; k < s.inst.constraints.size(); ++k)
      ASSERT_EQ(inner(s.inst.constraints[k], s.ball.center), s.inst.rhs[k]) << "constraint " << k;
    // S - I is PSD: trace >= 2 and det(S - I) >= 0.
    const auto SmI = s.ball.S - SymmetricMatrix<Rational>::identity(2);
    ASSERT_GE(SmI(0, 0), 0);
    ASSERT_GE(SmI(1, 1), 0);
    ASSERT_GE(SmI(0, 0) * SmI(1, 1) - SmI(0, 1) * SmI(0, 1), 0);
  }
}

TEST(AffineChart, DimensionsAndOrthonormality) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto C = fixtures::random_gaussian_integer(n, 5, rng);
    const auto s = setup(C);
    const auto chart = build_chart(s.inst, s.ball);
    ASSERT_EQ(chart.dimension(), n * n);
    for (std::size_t a = 0; a < chart.dimension(); ++a)
      for (std::size_t b = 0; b < chart.dimension(); ++b)
        ASSERT_NEAR(inner(chart.basis[a], chart.basis[b]), a == b ? 1.0 : 0.0, 1e-12);
    for (const auto& e : chart.basis)
      for (const auto& F : s.inst.constraints)
        ASSERT_NEAR(inner(F.cast<double>(), e), 0.0, 1e-12);
  }
}

TEST(AffineChart, PointsSatisfyEqualitiesAndProjectionIsIdempotent) {
  std::mt19937_64 rng(43);
  const auto s = setup(fixtures::example_matrix());
  const auto chart = build_chart(s.inst, s.ball);
  std::normal_distribution<double> d;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> z(chart.dimension());
    for (auto& x : z) x = d(rng);
    const auto Z = chart.point(z);
    for (std::size_t j = 0; j < s.inst.constraints.size(); ++j)
      ASSERT_NEAR(inner(s.inst.constraints[j].cast<double>(), Z), to_double(s.inst.rhs[j]), 1e-11);
    const auto back = chart.coordinates(Z - chart.origin);
    for (std::size_t i = 0; i < z.size(); ++i) ASSERT_NEAR(back[i], z[i], 1e-12);
    ASSERT_NEAR(frobenius_norm(chart.project(Z) - Z), 0.0, 1e-11);
  }
}

TEST(SeparationOracle, FeasibleCenterAndInfeasiblePoint) {
  const auto s = setup(fixtures::example_matrix());
  const auto chart = build_chart(s.inst, s.ball);
  const auto obj = s.inst.objective.cast<double>();
  const SeparationOracle oracle(chart, obj);
  const auto at_center = oracle(chart.origin, std::numeric_limits<double>::infinity());
  EXPECT_EQ(at_center.kind, CutKind::FeasibleImproving);
  EXPECT_NEAR(at_center.objective_value, 8.0, 1e-12);
  EXPECT_EQ(oracle(chart.origin, 1.0).kind, CutKind::Objective);

  std::vector<double> far(chart.dimension(), 0.0);
  far[0] = 100.0;
  const auto Z = chart.point(far);
  const auto cut = oracle(Z, 1.0);
  ASSERT_EQ(cut.kind, CutKind::Feasibility);
  EXPECT_LT(cut.min_eigenvalue, 0);
  // The cut separates: every feasible point, in particular the center, is on
  // the kept side.
  double lhs = 0;
  for (std::size_t k = 0; k < far.size(); ++k) lhs += cut.normal[k] * (0.0 - far[k]);
  EXPECT_LE(lhs, 0.0);
}

TEST(IterationCap, Formula) {
  const double expected = std::ceil(2.0 * 4 * 5 * std::log(3.0 * 40 * 1.0 / (0.5 * 1e-6))) + 64;
  EXPECT_EQ(iteration_cap(4, 40, 0.5, 1e-6, std::sqrt(0.5)), static_cast<std::size_t>(expected));
}

TEST(Solve, WorkedExample) {
  const auto s = setup(fixtures::example_matrix());
  const auto res = solve(s.inst, s.ball, 1e-6);
  EXPECT_GE(res.value, 1.9225);
  EXPECT_LE(res.value, 1.9235);
  EXPECT_NEAR(res.value, fixtures::kExampleChi, 2e-6);
  EXPECT_EQ(res.chart_dimension, 4u);
  EXPECT_LE(res.iterations, res.iteration_cap);
  EXPECT_LE(res.lower_bound, fixtures::kExampleChi + 1e-9);
  EXPECT_EQ(res.iterations, res.cuts_feasibility + res.cuts_objective);
}

TEST(Solve, ResultInvariants) {
  const auto s = setup(fixtures::example_matrix());
  const auto res = solve(s.inst, s.ball, 1e-5);
  for (std::size_t k = 1; k < res.accepted_values.size(); ++k)
    EXPECT_LT(res.accepted_values[k], res.accepted_values[k - 1]);
  EXPECT_LE(res.max_feasible_distance, to_double(s.ball.outer_radius) + 1e-6);
  EXPECT_GE(min_eig(res.Z), -1e-9);
  for (std::size_t j = 0; j < s.inst.constraints.size(); ++j)
    EXPECT_NEAR(inner(s.inst.constraints[j].cast<double>(), res.Z), to_double(s.inst.rhs[j]), 1e-9);
  // Witness: Y = hat(X) with tr X = 1 and |<C, X>| close to the value.
  const auto X = unhat(res.Z.Y());
  const auto Cd = fixtures::example_matrix().to_double();
  Complex cx = 0, tr = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    tr += X(i, i);
    for (std::size_t j = 0; j < 2; ++j) cx += Cd(i, j) * std::conj(X(i, j));
  }
  EXPECT_NEAR(tr.real(), 1.0, 1e-9);
  EXPECT_LE(std::abs(cx), res.value + 1e-5);
}

TEST(Solve, Deterministic) {
  const auto s = setup(fixtures::example_matrix());
  const auto a = solve(s.inst, s.ball, 1e-4), b = solve(s.inst, s.ball, 1e-4);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Solve, TrivialMatrices) {
  const auto id = setup(ComplexMatrix::identity(2));
  const auto r1 = solve(id.inst, id.ball, 1e-6);
  EXPECT_GE(r1.value, 1 - 1e-9);
  EXPECT_LE(r1.value, 1 + 1e-4);
  const auto pm = setup(diag_pm1());
  const auto r2 = solve(pm.inst, pm.ball, 1e-6);
  EXPECT_GE(r2.value, 0);
  EXPECT_LE(r2.value, 1e-4);
}

TEST(Solve, ScalarCase) {
  ComplexMatrix C(1);
  C(0, 0) = GaussianRational(3, 4);
  const auto s = setup(C);
  const auto res = solve(s.inst, s.ball, 1e-7);
  EXPECT_EQ(res.chart_dimension, 1u);
  EXPECT_NEAR(res.value, 5.0, 1e-6);
}

TEST(Solve, IterationCapRaisesSolverError) {
  const auto s = setup(fixtures::example_matrix());
  try {
    solve(s.inst, s.ball, 1e-6, {5});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.iterations, 5u);
    EXPECT_TRUE(std::isfinite(e.log_volume_radius));
  }
  EXPECT_THROW(solve(s.inst, s.ball, 0.0), InvalidArgument);
}

TEST(InnerBall, RandomChartDirectionsStayPsd) {
  std::mt19937_64 rng(44);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto C = fixtures::random_gaussian_integer(n, 5, rng);
    const auto s = setup(C);
    const auto chart = build_chart(s.inst, s.ball);
    const double r = to_double(s.ball.inner_radius);
    for (int k = 0; k < 200; ++k) {
      auto w = random_unit_vector(chart.dimension(), rng);
      for (auto& x : w) x *= r;
      ASSERT_GE(min_eig(chart.point(w)), -1e-9);
    }
  }
}

TEST(OuterBall, FeasiblePointsHaveBoundedTrace) {
  // Feasible Z has tr Y = 2 and u + w + 2t = 2(c + 2), so ||Z - G||_F <= R.
  std::mt19937_64 rng(45);
  const auto s = setup(fixtures::example_matrix());
  const auto chart = build_chart(s.inst, s.ball);
  const double R = to_double(s.ball.outer_radius);
  std::normal_distribution<double> d;
  int feasible = 0;
  for (int k = 0; k < 500; ++k) {
    auto w = random_unit_vector(chart.dimension(), rng);
    const double len = R * std::abs(d(rng));
    for (auto& x : w) x *= len;
    const auto Z = chart.point(w);
    if (min_eig(Z) < 0) continue;
    ++feasible;
    ASSERT_LE(frobenius_norm(Z - chart.origin), R + 1e-6);
    ASSERT_NEAR(Z.Y().trace(), 2.0, 1e-9);
  }
  EXPECT_GT(feasible, 0);
}
