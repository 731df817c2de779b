#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "crawford/verify.hpp"
#include "test_util.hpp"

using namespace crawford;

namespace {

const GaussianRational kExampleCenter(-3, -1);

double segment_distance(Complex c, double lo, double hi) {
  const double x = std::clamp(c.real(), lo, hi);
  return std::abs(c - Complex(x, 0));
}

} // namespace

TEST(Crawford, WorkedExampleSdp) {
  const auto r = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-6});
  EXPECT_NEAR(r.chi, fixtures::kExampleChi, 1e-6);
  EXPECT_NEAR(r.chi, 1.923, 1e-3);
  EXPECT_EQ(r.frob_ceiling, 7);
  EXPECT_EQ(r.scale_factor, 1);
  EXPECT_FALSE(r.zero_shortcut);
  // The nearest point is at distance chi from the center.
  EXPECT_NEAR(std::abs(r.nearest_point - Complex(-3, -1)), r.chi, 1e-3);
  EXPECT_NEAR(std::abs(r.nearest_point_translated), r.chi, 1e-3);
}

TEST(Crawford, WorkedExampleAtOrigin) {
  // 0 lies in W([[0, -4i], [2, 0]]).
  EXPECT_LE(crawford_number({fixtures::example_translated()}).chi, 1e-6);
}

TEST(Crawford, ScalarMultipleOfIdentity) {
  const auto r = crawford_number({GaussianRational(5) * ComplexMatrix::identity(3), {}, 1e-6});
  EXPECT_NEAR(r.chi, 5.0, 1e-6);
  EXPECT_NEAR(std::abs(r.nearest_point - 5.0), 0.0, 1e-3);
}

TEST(Crawford, ZeroShortcut) {
  const auto r = crawford_number({ComplexMatrix(3)});
  EXPECT_TRUE(r.zero_shortcut);
  EXPECT_EQ(r.chi, 0.0);
  ASSERT_TRUE(r.witness_X.has_value());
  EXPECT_NEAR((*r.witness_X)(2, 2).real(), 1.0 / 3.0, 1e-15);
  const auto shifted = crawford_number({GaussianRational(2, 1) * ComplexMatrix::identity(2), GaussianRational(2, 1)});
  EXPECT_TRUE(shifted.zero_shortcut);
  EXPECT_EQ(shifted.nearest_point, Complex(2, 1));
  EXPECT_THROW(crawford_number({ComplexMatrix::identity(2), {}, 0.0}), InvalidArgument);
}

TEST(Crawford, HermitianClosedForm) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> shift(-6, 6);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto H = fixtures::random_hermitian_rational(n, rng);
    const auto eig = symmetric_eig(hat_embed(H.to_double()));
    const GaussianRational c(shift(rng), shift(rng));
    const double eps = 1e-5;
    const auto r = crawford_number({H, c, eps});
    EXPECT_NEAR(r.chi, segment_distance(c.to_complex(), eig.min_value(), eig.max_value()), 2 * eps)
        << "trial " << trial;
  }
}

TEST(Crawford, FrobeniusBoundAndIdentities) {
  std::mt19937_64 rng(62);
  const double eps = 1e-5;
  for (int trial = 0; trial < 4; ++trial) {
    const auto C = fixtures::random_gaussian_integer(2 + trial % 2, 3, rng);
    const GaussianRational c(trial - 2, 1);
    const auto r = crawford_number({C, c, eps});
    const ComplexMatrix shifted = C - c * ComplexMatrix::identity(C.size());
    EXPECT_LE(r.chi, numerical_radius_upper(shifted) + eps);
    EXPECT_NEAR(crawford_number({shifted, {}, eps}).chi, r.chi, 2 * eps);
    EXPECT_NEAR(crawford_number({GaussianRational(3) * shifted, {}, eps}).chi, 3 * r.chi, 4 * eps);
  }
}

TEST(Crawford, WitnessIsADensityMatrixRealizingTheNearestPoint) {
  const auto r = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-6});
  ASSERT_TRUE(r.witness_X.has_value());
  const auto& X = *r.witness_X;
  const auto C = (fixtures::example_matrix()).to_double();
  Complex tr = 0, cx = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    tr += X(i, i);
    for (std::size_t j = 0; j < 2; ++j) cx += C(i, j) * X(j, i);
  }
  EXPECT_NEAR(tr.real(), 1.0, 1e-9);
  EXPECT_NEAR(tr.imag(), 0.0, 1e-12);
  EXPECT_GE(symmetric_min_eigenvalue(hat_embed(X)), -1e-9);
  EXPECT_NEAR(std::abs(cx - r.nearest_point_translated), 0.0, 1e-5);
  EXPECT_LE(std::abs(cx), r.chi + 2e-6);
}

TEST(Crawford, RationalEntriesAreScaled) {
  ComplexMatrix C(2);
  C(0, 0) = GaussianRational::parse("1/2+1/3i");
  C(1, 1) = GaussianRational::parse("1/2+1/3i");
  C(0, 1) = GaussianRational::parse("1/4");
  const auto r = crawford_number({C, {}, 1e-6});
  EXPECT_EQ(r.scale_factor, 144);
  // W is the disc of radius 1/8 about 1/2 + i/3.
  EXPECT_NEAR(r.chi, std::hypot(0.5, 1.0 / 3.0) - 0.125, 1e-6);
}

TEST(Crawford, RotateFlagAgrees) {
  const auto a = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-6});
  const auto b = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-6, Method::SdpEllipsoid, true});
  EXPECT_NEAR(a.chi, b.chi, 2e-6);
  EXPECT_NEAR(std::abs(a.nearest_point - b.nearest_point), 0.0, 1e-2);
}

TEST(Crawford, RotorHasExactIntegerModulus) {
  for (double phi : {0.0, 0.3, -1.2, 2.5, -3.0, 3.14159}) {
    const auto r = gaussian_rotor(phi);
    EXPECT_TRUE(r.g.is_gaussian_integer());
    EXPECT_EQ(r.g.norm_squared(), Rational(r.modulus * r.modulus));
    // |p/q - tan(phi/2)| <= 1/32 keeps the angle within 1/16.
    EXPECT_LE(std::abs(std::arg(r.g.to_complex() * std::polar(1.0, -phi))), 1.0 / 16) << phi;
    EXPECT_EQ(rational_unit(phi).norm_squared(), 1);
  }
  EXPECT_EQ(gaussian_rotor(0.0).g, GaussianRational(1));
}

TEST(Crawford, OracleAndBothMethods) {
  const auto o = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-4, Method::OracleSweep});
  EXPECT_NEAR(o.chi, fixtures::kExampleChi, 1e-4);
  EXPECT_FALSE(o.solver.has_value());
  EXPECT_NEAR(std::abs(o.nearest_point_translated), o.chi, 1e-3);
  const auto b = crawford_number({fixtures::example_translated(), kExampleCenter, 1e-4, Method::Both});
  ASSERT_TRUE(b.discrepancy.has_value());
  EXPECT_LE(*b.discrepancy, 2e-4);
  EXPECT_EQ(b.chi, *b.sdp_chi);
  EXPECT_STREQ(method_name(Method::Both), "both");
}

TEST(Verify, ExampleReportPasses) {
  const auto rep = verify_matrix(fixtures::example_translated(), kExampleCenter, 1e-4, 42);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_EQ(rep.checks.size(), 7u);
}
