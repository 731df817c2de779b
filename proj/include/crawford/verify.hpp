#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crawford/crawford.hpp"

namespace crawford {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  double sdp_chi = 0;
  double oracle_chi = 0;
  std::vector<CheckOutcome> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline double min_block_eigenvalue(const BlockDiagSymmetric<double>& Z) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : Z.blocks) m = std::min(m, symmetric_eig(b).min_value());
  return m;
}

} // namespace detail

/// Random unit direction in the chart, Gaussian then normalized.
inline std::vector<double> random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> z(d);
  double s = 0;
  do {
    s = 0;
    for (auto& x : z) {
      x = normal(rng);
      s += x * x;
    }
  } while (s == 0);
  for (auto& x : z) x /= std::sqrt(s);
  return z;
}

/// Runs both routes on chi(center, C) and the invariant battery: route
/// agreement, the Frobenius upper bound, witness consistency, inner and outer
/// ball inclusion, and the translation and scaling identities.
inline VerifyReport verify_matrix(const ComplexMatrix& C, const GaussianRational& center, double epsilon,
                                  std::uint64_t seed) {
  VerifyReport rep;
  std::mt19937_64 rng(seed);
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const std::size_t n = C.size();
  const ComplexMatrix translated = C - center * ComplexMatrix::identity(n);
  const auto base = crawford_number({C, center, epsilon, Method::Both});
  rep.sdp_chi = *base.sdp_chi;
  rep.oracle_chi = *base.oracle_chi;

  add("sdp_vs_oracle", *base.discrepancy <= 2 * epsilon,
      "|" + detail::fmt(rep.sdp_chi) + " - " + detail::fmt(rep.oracle_chi) + "| = " + detail::fmt(*base.discrepancy) +
          " <= " + detail::fmt(2 * epsilon));

  const double frob = numerical_radius_upper(translated);
  add("frobenius_upper_bound", base.chi <= frob + epsilon, detail::fmt(base.chi) + " <= " + detail::fmt(frob) + " + eps");

  if (base.zero_shortcut) {
    add("zero_matrix", base.chi == 0.0, "translated matrix is zero; chi = 0 by short-circuit");
    return rep;
  }

  {
    const auto& X = *base.witness_X;
    const auto [A, B] = hermitian_parts(translated.to_double());
    const Complex z(hermitian_inner(A, X), hermitian_inner(B, X));
    Complex tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += X(i, i);
    const double min_eig = symmetric_min_eigenvalue(hat_embed(X));
    const bool ok = std::abs(z) <= base.chi + 2 * epsilon && std::abs(tr - 1.0) <= 1e-9 && min_eig >= -1e-9;
    add("witness", ok,
        "|<C,X>| = " + detail::fmt(std::abs(z)) + ", tr X = " + detail::fmt(tr.real()) +
            ", min eig = " + detail::fmt(min_eig));
  }

  {
    auto [scaled, ell] = clear_denominators(translated);
    const auto inst = build_instance(hermitian_split(scaled), frobenius_ceiling(scaled));
    const auto ball = certified_ball(inst, scaled);
    const auto chart = build_chart(inst, ball);
    const double r = to_double(ball.inner_radius);
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
      auto w = random_unit_vector(chart.dimension(), rng);
      for (auto& x : w) x *= r;
      worst = std::min(worst, detail::min_block_eigenvalue(chart.point(w)));
    }
    add("inner_ball", worst >= -1e-9, "min eig over 200 directions = " + detail::fmt(worst));
    const double R = to_double(ball.outer_radius);
    const double far = base.solver->max_feasible_distance;
    add("outer_ball", far <= R + 1e-6, "max ||Z - G||_F = " + detail::fmt(far) + " <= R = " + detail::fmt(R));
  }

  {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
    const GaussianRational shift(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    const GaussianRational c2 = center + shift;
    const auto lhs = crawford_number({C, c2, epsilon, Method::SdpEllipsoid});
    const auto rhs = crawford_number({C - c2 * ComplexMatrix::identity(n), GaussianRational(0), epsilon,
                                      Method::SdpEllipsoid});
    const double diff = std::abs(lhs.chi - rhs.chi);
    add("translation_identity", diff <= 2 * epsilon,
        "c' = " + c2.str() + ": |" + detail::fmt(lhs.chi) + " - " + detail::fmt(rhs.chi) + "| = " + detail::fmt(diff));
  }

  {
    const int factors[] = {2, 3, 5};
    const int ell = factors[std::uniform_int_distribution<int>(0, 2)(rng)];
    const auto big = crawford_number(
        {GaussianRational(ell) * translated, GaussianRational(0), epsilon, Method::SdpEllipsoid});
    const double diff = std::abs(big.chi - ell * rep.sdp_chi);
    add("scaling_identity", diff <= (ell + 1) * epsilon,
        "l = " + std::to_string(ell) + ": |chi(lC) - l chi(C)| = " + detail::fmt(diff));
  }
  return rep;
}

} // namespace crawford
