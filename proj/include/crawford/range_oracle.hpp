#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "crawford/eigen.hpp"
#include "crawford/hermitian.hpp"
#include "crawford/matrix.hpp"

namespace crawford {

/// g(theta) = lambda_min(cos(theta) A + sin(theta) B) for C = A + iB.
/// The minimum of Re(e^{-i theta} z) over the numerical range, so
/// dist(0, W(C)) = max(0, max_theta g(theta)).
class SupportFunction {
public:
  explicit SupportFunction(const ComplexMatrixD& C) : C_(C) {
    auto [A, B] = hermitian_parts(C);
    Ahat_ = hat_embed(A);
    Bhat_ = hat_embed(B);
    lipschitz_ = A.frobenius_norm() + B.frobenius_norm();
    A_ = std::move(A);
    B_ = std::move(B);
  }

  /// Bound on |g(theta) - g(theta')| / |theta - theta'|.
  double lipschitz() const { return lipschitz_; }
  const ComplexMatrixD& matrix() const { return C_; }

  SymmetricMatrix<double> pencil(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    SymmetricMatrix<double> M = c * Ahat_;
    M += s * Bhat_;
    return M;
  }

  /// `below` is an optional value known to lie under g(theta).
  double operator()(double theta, double below = std::numeric_limits<double>::quiet_NaN()) const {
    const Complex c(std::cos(theta)), s(std::sin(theta));
    ComplexMatrixD H(C_.size());
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t j = 0; j < H.size(); ++j) H(i, j) = c * A_(i, j) + s * B_(i, j);
    return hermitian_min_eigenvalue(H, below);
  }

  /// Unit top eigenvector of cos(theta) A + sin(theta) B, recovered from the
  /// real embedding as x = p + i q.
  std::vector<Complex> top_eigenvector(double theta) const {
    const auto eig = symmetric_eig(pencil(theta));
    const std::size_t n = C_.size();
    std::vector<Complex> x(n);
    double norm2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = {eig.vector(i, 0), eig.vector(n + i, 0)};
      norm2 += std::norm(x[i]);
    }
    for (auto& xi : x) xi /= std::sqrt(norm2);
    return x;
  }

  Complex quadratic_form(const std::vector<Complex>& x) const {
    Complex z = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) z += std::conj(x[i]) * C_(i, j) * x[j];
    return z;
  }

  /// x* C x for the top eigenvector x at theta: a point of W(C) on the
  /// supporting line with outer normal e^{i theta}.
  Complex boundary_point(double theta) const { return quadratic_form(top_eigenvector(theta)); }

private:
  ComplexMatrixD C_, A_, B_;
  SymmetricMatrix<double> Ahat_, Bhat_;
  double lipschitz_ = 0;
};

struct SupportProfile {
  std::vector<double> thetas;
  std::vector<double> gmin;
  double lipschitz_L = 0;
};

inline SupportProfile support_profile(const SupportFunction& g, std::size_t m, double phase = 0.0) {
  SupportProfile p;
  p.lipschitz_L = g.lipschitz();
  p.thetas.resize(m);
  p.gmin.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    p.thetas[k] = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    p.gmin[k] = g(p.thetas[k]);
  }
  return p;
}

struct OracleResult {
  double chi = 0;
  double theta = 0;         // maximizing direction
  double grid_max = 0;      // max over the grid before refinement
  double refined_max = 0;   // after golden-section refinement
  std::size_t grid_size = 0;
};

inline std::size_t oracle_grid_size(double lipschitz, double delta) {
  return static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * lipschitz / delta)) + 8;
}

/// Certified sweep: the grid spacing h satisfies L h / 2 <= delta, so the
/// grid maximum is within delta of max_theta g; a golden-section pass on the
/// best bracket then tightens it.
inline OracleResult chi_oracle_detail(const ComplexMatrixD& C, double delta) {
  if (!(delta > 0)) throw InvalidArgument("chi_oracle: delta must be positive");
  const SupportFunction g(C);
  OracleResult res;
  const std::size_t m = oracle_grid_size(g.lipschitz(), delta);
  res.grid_size = m;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
  std::size_t best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  // Weyl: g moves by at most L h between nodes, so the previous value less
  // that bound starts the eigenvalue search from below.
  const double drop = g.lipschitz() * h * (1 + 1e-9) + 1e-12 * (1 + g.lipschitz());
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < m; ++k) {
    const double v = g(h * static_cast<double>(k), prev - drop);
    prev = v;
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  res.grid_max = best;
  res.theta = h * static_cast<double>(best_k);

  // Golden-section maximization on [theta_{k-1}, theta_{k+1}].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = res.theta - h, b = res.theta + h;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
  }
  const double theta_refined = f1 > f2 ? x1 : x2;
  res.refined_max = std::max(f1, f2);
  if (res.refined_max > res.grid_max) res.theta = theta_refined;
  res.chi = std::max(0.0, std::max(res.grid_max, res.refined_max));
  return res;
}

inline double chi_oracle(const ComplexMatrixD& C, double delta) { return chi_oracle_detail(C, delta).chi; }
inline double chi_oracle(const ComplexMatrix& C, double delta) { return chi_oracle(C.to_double(), delta); }

/// True when max_theta g(theta) <= 1e-10, i.e. 0 lies in W(C) up to delta.
inline bool zero_membership(const ComplexMatrixD& C, double delta = 1e-6) {
  const auto r = chi_oracle_detail(C, delta);
  return std::max(r.grid_max, r.refined_max) <= 1e-10;
}
inline bool zero_membership(const ComplexMatrix& C, double delta = 1e-6) {
  return zero_membership(C.to_double(), delta);
}

struct BoundarySample {
  double theta;
  Complex z;
};

/// Points x_k* C x_k of W(C) for theta_k = phase + 2 pi k / m. Degenerate
/// top eigenspaces yield an arbitrary point of the supporting facet.
inline std::vector<BoundarySample> sample_boundary(const ComplexMatrixD& C, std::size_t m, double phase = 0.0) {
  if (m < 3) throw InvalidArgument("sample_boundary requires at least 3 samples");
  const SupportFunction g(C);
  std::vector<BoundarySample> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    out[k] = {theta, g.boundary_point(theta)};
  }
  return out;
}

/// Andrew's monotone chain; counter-clockwise, no repeated endpoint.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline std::size_t min_modulus_index(const std::vector<BoundarySample>& samples) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < samples.size(); ++k)
    if (std::abs(samples[k].z) < std::abs(samples[best].z)) best = k;
  return best;
}

inline void write_boundary_csv(std::ostream& out, const std::vector<BoundarySample>& samples) {
  out << "theta,re,im\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.theta, s.z.real(), s.z.imag());
    out << buf;
  }
}

/// Hull polyline of the samples, the origin, and a marker at `marker`.
inline void write_boundary_svg(std::ostream& out, const std::vector<BoundarySample>& samples,
                               std::optional<Complex> marker = std::nullopt) {
  std::vector<Complex> pts;
  for (const auto& s : samples) pts.push_back(s.z);
  const auto hull = convex_hull(pts);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = 0.1 * span;
  const double size = 400.0;
  const double scale = size / (span + 2 * pad);
  auto px = [&](Complex p) { return (p.real() - xmin + pad) * scale; };
  auto py = [&](Complex p) { return (ymax + pad - p.imag()) * scale; }; // flip y
  const double width = (xmax - xmin + 2 * pad) * scale, height = (ymax - ymin + 2 * pad) * scale;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.1f\" height=\"%.1f\" viewBox=\"0 0 %.1f %.1f\">\n",
                width, height, width, height);
  out << buf;
  out << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (std::size_t k = 0; k <= hull.size() && !hull.empty(); ++k) {
    const Complex p = hull[k % hull.size()];
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", k ? " " : "", px(p), py(p));
    out << buf;
  }
  out << "\"/>\n";
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"gray\"/>\n", px(0.0), py(0.0));
  out << buf;
  if (marker) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"red\"/>\n", px(*marker),
                  py(*marker));
    out << buf;
  }
  out << "</svg>\n";
}

} // namespace crawford
