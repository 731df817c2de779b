#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "crawford/eigen.hpp"
#include "crawford/error.hpp"
#include "crawford/hermitian.hpp"
#include "crawford/sdp.hpp"

namespace crawford {

/// Strictly feasible center G with an inner radius r and an outer radius R:
/// B(G, r) n L lies in the feasible region, which lies in B(G, R) n L.
struct CertifiedBall {
  BlockDiagSymmetric<Rational> center; // diag((1/n) I_2n, S, 1)
  SymmetricMatrix<Rational> S;
  Rational inner_radius; // 1/n
  Rational outer_radius; // 12 + 4 ceil(||C||_F)
  GaussianRational trace_center; // tr(C)/n
};

inline CertifiedBall certified_ball(const SdpInstance& inst, const ComplexMatrix& C) {
  const std::size_t n = C.size();
  if (n != inst.n) throw InvalidArgument("certified_ball: matrix size does not match instance");
  if (C.is_zero()) throw InvalidArgument("certified_ball: zero matrix");
  const Integer c = inst.frob_ceiling;

  CertifiedBall ball;
  ball.trace_center = C.trace() / GaussianRational(static_cast<long long>(n));
  const Rational& x = ball.trace_center.re;
  const Rational& y = ball.trace_center.im;
  ball.S = SymmetricMatrix<Rational>(2);
  ball.S.set(0, 0, Rational(c) + 1 + x);
  ball.S.set(0, 1, y);
  ball.S.set(1, 1, Rational(c) + 1 - x);

  ball.center = BlockDiagSymmetric<Rational>(n);
  const Rational diag(1, static_cast<long long>(n));
  for (std::size_t i = 0; i < 2 * n; ++i) ball.center.blocks[0].set(i, i, diag);
  ball.center.blocks[1] = ball.S;
  ball.center.blocks[2].set(0, 0, 1);

  ball.inner_radius = diag;
  ball.outer_radius = Rational(12 + 4 * c);
  return ball;
}

/// Orthonormal coordinates z -> origin + sum_k z_k basis_k on the affine
/// solution set of all equality constraints (restricted to block-diagonal
/// matrices). Since the basis is orthonormal, ||Z - origin||_F = ||z||_2.
struct AffineChart {
  BlockDiagSymmetric<double> origin;
  std::vector<BlockDiagSymmetric<double>> basis;

  std::size_t dimension() const { return basis.size(); }

  BlockDiagSymmetric<double> point(std::span<const double> z) const {
    BlockDiagSymmetric<double> Z = origin;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (z[k] != 0.0) Z += z[k] * basis[k];
    return Z;
  }

  std::vector<double> coordinates(const BlockDiagSymmetric<double>& direction) const {
    std::vector<double> c(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) c[k] = inner(direction, basis[k]);
    return c;
  }

  /// Orthogonal projection onto the affine chart.
  BlockDiagSymmetric<double> project(const BlockDiagSymmetric<double>& Z) const {
    return point(coordinates(Z - origin));
  }
};

namespace detail {

// Modified Gram-Schmidt with one reorthogonalization pass. Returns false if
// the residual is below tol (dependent vector).
inline bool orthonormalize_against(BlockDiagSymmetric<double>& v, const std::vector<BlockDiagSymmetric<double>>& q,
                                   double tol) {
  const double before = frobenius_norm(v);
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : q) v -= inner(v, e) * e;
  const double after = frobenius_norm(v);
  if (after <= tol * std::max(1.0, before)) return false;
  v *= 1.0 / after;
  return true;
}

} // namespace detail

inline AffineChart build_chart(const SdpInstance& inst, const CertifiedBall& ball) {
  const std::size_t n = inst.n;
  constexpr double tol = 1e-10;

  std::vector<BlockDiagSymmetric<double>> span;
  for (auto v : block_subspace_spanning_set<double>(n))
    if (detail::orthonormalize_against(v, span, tol)) span.push_back(std::move(v));
  if (span.size() != n * n + 4) throw NumericalError("build_chart: block subspace spanning set is rank deficient");

  // The four non-subspace constraints, restricted to the block subspace.
  std::vector<BlockDiagSymmetric<double>> normals;
  for (std::size_t k = inst.N; k < inst.constraints.size(); ++k) {
    const auto f = BlockDiagSymmetric<Rational>::block_part(inst.constraints[k]).cast<double>();
    BlockDiagSymmetric<double> p(n);
    for (const auto& q : span) p += inner(f, q) * q;
    if (!detail::orthonormalize_against(p, normals, tol))
      throw NumericalError("build_chart: equality constraints are rank deficient");
    normals.push_back(std::move(p));
  }

  AffineChart chart;
  chart.origin = ball.center.cast<double>();
  std::vector<BlockDiagSymmetric<double>> accepted = normals;
  for (auto v : span) {
    if (!detail::orthonormalize_against(v, accepted, 1e-8)) continue;
    accepted.push_back(v);
    chart.basis.push_back(std::move(v));
  }
  if (chart.basis.size() != n * n)
    throw NumericalError("build_chart: expected chart dimension " + std::to_string(n * n) + ", got " +
                         std::to_string(chart.basis.size()));
  return chart;
}

enum class CutKind { FeasibleImproving, Feasibility, Objective };

/// A halfspace {z : normal . (z - center) <= 0} that keeps every feasible
/// point (Feasibility) or every feasible point no worse than the center
/// (FeasibleImproving, Objective).
struct Cut {
  CutKind kind = CutKind::Feasibility;
  std::vector<double> normal;
  std::size_t block = 0;
  std::vector<double> eigenvector;
  double min_eigenvalue = 0;
  double objective_value = 0;
};

class SeparationOracle {
public:
  SeparationOracle(const AffineChart& chart, const BlockDiagSymmetric<double>& objective)
      : chart_(&chart), objective_(objective), objective_coords_(chart.coordinates(objective)) {}

  const std::vector<double>& objective_coordinates() const { return objective_coords_; }

  static double psd_tolerance(const BlockDiagSymmetric<double>& Z) { return 1e-9 * (1.0 + frobenius_norm(Z)); }

  Cut operator()(const BlockDiagSymmetric<double>& Z, double best_value) const {
    Cut cut;
    double most_negative = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < 3; ++b) {
      const auto eig = symmetric_eig(Z.blocks[b]);
      if (eig.min_value() < most_negative) {
        most_negative = eig.min_value();
        cut.block = b;
        cut.eigenvector = eig.column(eig.size() - 1);
      }
    }
    cut.min_eigenvalue = most_negative;
    if (most_negative < -psd_tolerance(Z)) {
      cut.kind = CutKind::Feasibility;
      const auto& v = cut.eigenvector;
      cut.normal.resize(chart_->dimension());
      for (std::size_t k = 0; k < chart_->dimension(); ++k) {
        const auto& blk = chart_->basis[k].blocks[cut.block];
        double q = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          for (std::size_t j = 0; j < v.size(); ++j) q += v[i] * blk(i, j) * v[j];
        cut.normal[k] = -q;
      }
      return cut;
    }
    cut.objective_value = inner(objective_, Z);
    cut.kind = cut.objective_value < best_value ? CutKind::FeasibleImproving : CutKind::Objective;
    cut.normal = objective_coords_;
    return cut;
  }

private:
  const AffineChart* chart_;
  BlockDiagSymmetric<double> objective_;
  std::vector<double> objective_coords_;
};

/// A-priori iteration cap from the volume argument, plus slack for rounding.
inline std::size_t iteration_cap(std::size_t d, double R, double r, double epsilon, double objective_norm) {
  const double dd = static_cast<double>(d);
  const double ratio = 3.0 * R * std::max(1.0, objective_norm) / (r * epsilon);
  return static_cast<std::size_t>(std::ceil(2.0 * dd * (dd + 1.0) * std::log(std::max(ratio, 1.0)))) + 64;
}

enum class StopReason { GapCertificate, VolumeCertificate };

struct SolveResult {
  double value = 0;
  BlockDiagSymmetric<double> Z;
  std::size_t iterations = 0;
  std::size_t cuts_feasibility = 0;
  std::size_t cuts_objective = 0;
  double certified_gap = 0; // the requested epsilon
  double gap_bound = 0;     // best - lower bound when stopped by the gap certificate
  double lower_bound = 0;
  std::size_t iteration_cap = 0;
  StopReason stop = StopReason::GapCertificate;
  std::vector<double> accepted_values;
  double max_feasible_distance = 0; // max ||Z - G||_F over feasible centers visited
  std::size_t chart_dimension = 0;
};

class SolverError : public NumericalError {
public:
  SolverError(const std::string& what, double best, double log_radius, std::size_t iters)
      : NumericalError(what), best_value(best), log_volume_radius(log_radius), iterations(iters) {}
  double best_value;
  double log_volume_radius; // log det(P)^(1/2d) of the final ellipsoid
  std::size_t iterations;
};

struct SolveOptions {
  std::size_t max_iterations = 0; // 0 selects iteration_cap()
};

namespace detail {

inline SymmetricMatrix<double> clip_psd(const SymmetricMatrix<double>& M) {
  const auto eig = symmetric_eig(M);
  const std::size_t m = M.size();
  SymmetricMatrix<double> out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (eig.values[k] > 0) s += eig.vector(i, k) * eig.values[k] * eig.vector(j, k);
      out.set(i, j, s);
    }
  return out;
}

} // namespace detail

/// Central-cut ellipsoid method with a sliding objective in chart
/// coordinates, started from the ball of radius R about G. Terminates with
/// value <= p* + epsilon, certified either by the ellipsoid lower bound or by
/// the volume bound implied by the inner ball of radius r.
inline SolveResult solve(const SdpInstance& inst, const CertifiedBall& ball, double epsilon, SolveOptions opt = {}) {
  if (!(epsilon > 0)) throw InvalidArgument("solve: epsilon must be positive");
  const AffineChart chart = build_chart(inst, ball);
  const auto objective = inst.objective.cast<double>();
  const SeparationOracle oracle(chart, objective);
  const auto& c = oracle.objective_coordinates();
  const std::size_t d = chart.dimension();
  const double R = to_double(ball.outer_radius);
  const double r = to_double(ball.inner_radius);
  const double value_at_origin = inner(objective, chart.origin);
  double c_norm = 0;
  for (double ck : c) c_norm += ck * ck;
  c_norm = std::sqrt(c_norm);

  SolveResult res;
  res.certified_gap = epsilon;
  res.chart_dimension = d;
  res.iteration_cap = opt.max_iterations ? opt.max_iterations
                                         : iteration_cap(d, R, r, epsilon, frobenius_norm(objective));

  // Feasible values are >= 0 (u + w >= 0), so every point of B(G, r) n L is
  // within value_at_origin + r |c| of the optimum.
  const double mu = std::min(1.0, epsilon / (value_at_origin + r * c_norm));
  const double log_radius_target = std::log(mu * r);

  // The ellipsoid is {x + B u : |u| <= 1}, i.e. P = B B^T, updated in
  // factored form so P stays positive semidefinite under rounding.
  std::vector<double> x(d, 0.0), best_x;
  std::vector<double> B(d * d, 0.0), Btg(d), Bp(d);
  for (std::size_t i = 0; i < d; ++i) B[i * d + i] = R;
  auto norm_Bt = [&](const std::vector<double>& g, std::vector<double>& out) {
    double s2 = 0;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) s += B[i * d + j] * g[i];
      out[j] = s;
      s2 += s * s;
    }
    return s2;
  };
  double log_radius = std::log(R);
  const double dd = static_cast<double>(d);
  const double log_shrink =
      d == 1 ? -std::log(2.0)
             : (dd * std::log(dd * dd / (dd * dd - 1.0)) + std::log(1.0 - 2.0 / (dd + 1.0))) / (2.0 * dd);
  double best = std::numeric_limits<double>::infinity();
  res.lower_bound = 0.0;

  bool done = false;
  for (std::size_t iter = 0; iter < res.iteration_cap; ++iter) {
    res.iterations = iter + 1;
    const auto Z = chart.point(x);
    const Cut cut = oracle(Z, best);
    if (cut.kind == CutKind::Feasibility) {
      ++res.cuts_feasibility;
    } else {
      ++res.cuts_objective;
      res.max_feasible_distance = std::max(res.max_feasible_distance, frobenius_norm(Z - chart.origin));
      if (cut.kind == CutKind::FeasibleImproving) {
        best = cut.objective_value;
        best_x = x;
        res.accepted_values.push_back(best);
      }
    }

    // min over the ellipsoid of the objective bounds p* from below.
    double cx = 0;
    for (std::size_t i = 0; i < d; ++i) cx += c[i] * x[i];
    const double cPc = norm_Bt(c, Btg);
    res.lower_bound = std::max(res.lower_bound, value_at_origin + cx - std::sqrt(std::max(cPc, 0.0)));
    if (best - res.lower_bound <= epsilon) {
      res.stop = StopReason::GapCertificate;
      res.gap_bound = best - res.lower_bound;
      done = true;
      break;
    }
    if (log_radius <= log_radius_target) {
      res.stop = StopReason::VolumeCertificate;
      res.gap_bound = epsilon;
      done = true;
      break;
    }

    const double gPg = norm_Bt(cut.normal, Btg);
    if (!(gPg > 0) || !std::isfinite(gPg))
      throw SolverError("ellipsoid degenerated (g'Pg = " + std::to_string(gPg) + ")", best, log_radius, iter + 1);
    const double inv = 1.0 / std::sqrt(gPg);
    for (auto& v : Btg) v *= inv; // p = B^T g / |B^T g|
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) s += B[i * d + j] * Btg[j];
      Bp[i] = s; // P g / sqrt(g'Pg)
    }
    if (d == 1) {
      x[0] -= 0.5 * Bp[0];
      B[0] *= 0.5;
    } else {
      // B <- B (a I + b p p^T): a^2 = d^2/(d^2-1), a + b = d/(d+1).
      const double a = dd / std::sqrt(dd * dd - 1.0);
      const double b = dd / (dd + 1.0) - a;
      for (std::size_t i = 0; i < d; ++i) x[i] -= Bp[i] / (dd + 1.0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) B[i * d + j] = a * B[i * d + j] + b * Bp[i] * Btg[j];
    }
    log_radius += log_shrink;
  }
  if (!done)
    throw SolverError("iteration cap of " + std::to_string(res.iteration_cap) + " reached without certificate", best,
                      log_radius, res.iterations);

  if (best_x.empty()) throw SolverError("no feasible center was visited", best, log_radius, res.iterations);

  // Clip to the PSD cone and return to the affine slice.
  auto Z = chart.point(best_x);
  for (auto& blk : Z.blocks) blk = detail::clip_psd(blk);
  res.Z = chart.project(Z);
  res.value = inner(objective, res.Z);
  return res;
}

} // namespace crawford
