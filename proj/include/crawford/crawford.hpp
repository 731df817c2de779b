#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "crawford/ellipsoid.hpp"
#include "crawford/hermitian.hpp"
#include "crawford/range_oracle.hpp"
#include "crawford/sdp.hpp"

namespace crawford {

enum class Method { SdpEllipsoid, OracleSweep, Both };

inline const char* method_name(Method m) {
  switch (m) {
  case Method::SdpEllipsoid: return "sdp";
  case Method::OracleSweep: return "oracle";
  case Method::Both: return "both";
  }
  return "?";
}

struct CrawfordQuery {
  ComplexMatrix C;
  GaussianRational center{};
  double epsilon = 1e-6;
  Method method = Method::SdpEllipsoid;
  /// Multiply by a Gaussian integer g with arg g close to -arg tr C, then divide by |g|.
  bool rotate = false;
};

struct CrawfordResult {
  double chi = 0;
  Complex nearest_point;            // original frame
  Complex nearest_point_translated; // frame of C - cI
  std::optional<ComplexMatrixD> witness_X;
  Method method_used = Method::SdpEllipsoid;
  std::optional<SolveResult> solver;
  std::optional<double> sdp_chi;
  std::optional<double> oracle_chi;
  std::optional<double> discrepancy;
  Integer scale_factor = 1;
  Integer frob_ceiling = 0;
  bool zero_shortcut = false;
};

/// ||C||_F, an upper bound for the numerical radius and hence for chi.
inline double numerical_radius_upper(const ComplexMatrix& C) { return std::sqrt(to_double(frobenius_norm_squared(C))); }

/// Gaussian integer g = (q^2 - p^2) + 2pq i with |g| = p^2 + q^2 exactly and
/// arg g close to phi; p/q approximates tan(phi / 2) with q <= max_q.
struct GaussianRotor {
  GaussianRational g;
  Integer modulus;
};

inline GaussianRotor gaussian_rotor(double phi, int max_q = 16) {
  bool flip = false;
  if (std::abs(phi) > std::numbers::pi / 2) {
    phi -= std::copysign(std::numbers::pi, phi);
    flip = true;
  }
  const double t = std::tan(phi / 2);
  long long bp = 0, bq = 1;
  for (long long q = 1; q <= max_q; ++q) {
    const long long p = std::llround(t * static_cast<double>(q));
    if (std::abs(static_cast<double>(p) / q - t) < std::abs(static_cast<double>(bp) / bq - t)) bp = p, bq = q;
  }
  GaussianRotor r{GaussianRational(Rational(bq * bq - bp * bp), Rational(2 * bp * bq)), Integer(bp * bp + bq * bq)};
  if (flip) r.g = -r.g;
  return r;
}

/// The exact unit g / |g| for the rotor of phi.
inline GaussianRational rational_unit(double phi) {
  const auto r = gaussian_rotor(phi);
  return r.g / GaussianRational(Rational(r.modulus));
}

namespace detail {

inline ComplexMatrixD density_clip(const ComplexMatrixD& X) {
  auto Y = crawford::detail::clip_psd(hat_embed(X));
  auto out = unhat(Y);
  Complex tr = 0;
  for (std::size_t i = 0; i < out.size(); ++i) tr += out(i, i);
  return (1.0 / tr.real()) * out;
}

inline void solve_sdp(const ComplexMatrix& translated, const CrawfordQuery& q, CrawfordResult& out) {
  GaussianRotor rotor{GaussianRational(1), Integer(1)};
  if (q.rotate && !translated.trace().is_zero()) rotor = gaussian_rotor(-std::arg(translated.trace().to_complex()));
  const ComplexMatrix rotated = rotor.g * translated;

  auto [scaled, ell] = clear_denominators(rotated);
  const double ell_d = to_double(Rational(ell));
  const double total = ell_d * to_double(Rational(rotor.modulus));
  const auto pencil = hermitian_split(scaled);
  const Integer fc = frobenius_ceiling(scaled);
  const auto inst = build_instance(pencil, fc);
  const auto ball = certified_ball(inst, scaled);
  SolveResult sr = solve(inst, ball, q.epsilon * total);

  out.scale_factor = ell;
  out.frob_ceiling = fc;
  out.sdp_chi = sr.value / total;
  const Complex z_scaled(0.5 * (sr.Z.u() - sr.Z.w()), sr.Z.v());
  out.nearest_point_translated = z_scaled / (ell_d * rotor.g.to_complex());
  out.witness_X = density_clip(unhat(sr.Z.Y()));
  out.solver = std::move(sr);
}

inline void solve_oracle(const ComplexMatrix& translated, const CrawfordQuery& q, CrawfordResult& out,
                         bool set_point) {
  const ComplexMatrixD Cd = translated.to_double();
  const auto r = chi_oracle_detail(Cd, q.epsilon);
  out.oracle_chi = r.chi;
  if (!set_point) return;
  if (r.chi > 0) {
    // The minimizer of Re(e^{-i theta} z) is the top eigenvector in direction theta + pi.
    const SupportFunction g(Cd);
    const auto x = g.top_eigenvector(r.theta + std::numbers::pi);
    out.nearest_point_translated = g.quadratic_form(x);
    ComplexMatrixD X(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) X(i, j) = x[i] * std::conj(x[j]);
    out.witness_X = X;
  } else {
    out.nearest_point_translated = 0.0;
  }
}

} // namespace detail

/// chi(c, C) = dist(c, W(C)). The SDP route translates, clears denominators,
/// builds the standard-form instance with its certified ball and runs the
/// ellipsoid method with tolerance epsilon * ell, so chi is within epsilon.
inline CrawfordResult crawford_number(const CrawfordQuery& q) {
  if (!(q.epsilon > 0)) throw InvalidArgument("epsilon must be positive");
  const std::size_t n = q.C.size();
  const ComplexMatrix translated = q.C - q.center * ComplexMatrix::identity(n);
  const Complex c = q.center.to_complex();

  CrawfordResult out;
  out.method_used = q.method;
  if (translated.is_zero()) {
    out.zero_shortcut = true;
    out.chi = 0.0;
    out.nearest_point_translated = 0.0;
    out.nearest_point = c;
    ComplexMatrixD X(n);
    for (std::size_t i = 0; i < n; ++i) X(i, i) = 1.0 / static_cast<double>(n);
    out.witness_X = X;
    if (q.method != Method::OracleSweep) out.sdp_chi = 0.0;
    if (q.method != Method::SdpEllipsoid) out.oracle_chi = 0.0;
    if (q.method == Method::Both) out.discrepancy = 0.0;
    return out;
  }

  switch (q.method) {
  case Method::SdpEllipsoid:
    detail::solve_sdp(translated, q, out);
    out.chi = *out.sdp_chi;
    break;
  case Method::OracleSweep:
    detail::solve_oracle(translated, q, out, true);
    out.chi = *out.oracle_chi;
    break;
  case Method::Both:
    detail::solve_sdp(translated, q, out);
    detail::solve_oracle(translated, q, out, false);
    out.chi = *out.sdp_chi;
    out.discrepancy = std::abs(*out.sdp_chi - *out.oracle_chi);
    break;
  }
  out.nearest_point = out.nearest_point_translated + c;
  return out;
}

} // namespace crawford
