#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "crawford/error.hpp"
#include "crawford/matrix.hpp"

namespace crawford {

/// Spectral decomposition M = Q diag(values) Q^T with values sorted
/// descending. Column k of Q is stored at vectors[i * m + k].
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<double> vectors;

  std::size_t size() const { return values.size(); }
  double vector(std::size_t i, std::size_t k) const { return vectors[i * values.size() + k]; }
  std::vector<double> column(std::size_t k) const {
    std::vector<double> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = vector(i, k);
    return v;
  }
  double min_value() const { return values.back(); }
  double max_value() const { return values.front(); }
};

struct JacobiOptions {
  double relative_tolerance = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm falls below
/// relative_tolerance * ||M||_F; throws NumericalError after max_sweeps.
inline EigenDecomposition symmetric_eig(const SymmetricMatrix<double>& M, JacobiOptions opt = {}) {
  const std::size_t m = M.size();
  std::vector<double> a(M.data().begin(), M.data().end());
  std::vector<double> q(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) q[i * m + i] = 1.0;

  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  const double threshold = opt.relative_tolerance * frobenius_norm(M);

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) s += 2 * at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep++ >= opt.max_sweeps)
      throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(opt.max_sweeps) +
                           " sweeps");
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t r = p + 1; r < m; ++r) {
        const double apr = at(p, r);
        if (apr == 0.0) continue;
        const double theta = (at(r, r) - at(p, p)) / (2.0 * apr);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p);
          const double akr = at(k, r);
          at(k, p) = c * akp - s * akr;
          at(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k);
          const double ark = at(r, k);
          at(p, k) = c * apk - s * ark;
          at(r, k) = s * apk + c * ark;
        }
        at(p, r) = 0.0;
        at(r, p) = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double qkp = q[k * m + p];
          const double qkr = q[k * m + r];
          q[k * m + p] = c * qkp - s * qkr;
          q[k * m + r] = s * qkp + c * qkr;
        }
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return at(x, x) > at(y, y); });

  EigenDecomposition out;
  out.values.resize(m);
  out.vectors.resize(m * m);
  for (std::size_t k = 0; k < m; ++k) {
    out.values[k] = at(order[k], order[k]);
    for (std::size_t i = 0; i < m; ++i) out.vectors[i * m + k] = q[i * m + order[k]];
  }
  return out;
}

namespace detail {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off; // size m-1
};

// Householder reduction to tridiagonal form, eigenvalues only.
inline Tridiagonal tridiagonalize(const SymmetricMatrix<double>& M) {
  const std::size_t m = M.size();
  std::vector<double> a(M.data().begin(), M.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  std::vector<double> v(m), w(m);
  Tridiagonal t;
  t.diag.resize(m);
  t.off.resize(m > 0 ? m - 1 : 0);

  for (std::size_t k = 0; k + 2 < m; ++k) {
    double norm = 0;
    for (std::size_t i = k + 1; i < m; ++i) norm += at(i, k) * at(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      t.off[k] = 0.0;
      continue;
    }
    const double alpha = at(k + 1, k) > 0 ? -norm : norm;
    for (std::size_t i = k + 1; i < m; ++i) v[i] = at(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0;
    for (std::size_t i = k + 1; i < m; ++i) vnorm += v[i] * v[i];
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) {
      t.off[k] = at(k + 1, k);
      continue;
    }
    for (std::size_t i = k + 1; i < m; ++i) v[i] /= vnorm;
    // B <- B - v q^T - q v^T with q = 2(w - (v.w) v), w = B v.
    double kappa = 0;
    for (std::size_t i = k + 1; i < m; ++i) {
      double s = 0;
      for (std::size_t j = k + 1; j < m; ++j) s += at(i, j) * v[j];
      w[i] = s;
      kappa += v[i] * s;
    }
    for (std::size_t i = k + 1; i < m; ++i) w[i] = 2.0 * (w[i] - kappa * v[i]);
    for (std::size_t i = k + 1; i < m; ++i)
      for (std::size_t j = k + 1; j < m; ++j) at(i, j) -= v[i] * w[j] + w[i] * v[j];
    t.off[k] = alpha;
  }
  for (std::size_t i = 0; i < m; ++i) t.diag[i] = at(i, i);
  if (m >= 2) t.off[m - 2] = at(m - 1, m - 2);
  return t;
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
inline std::size_t sturm_count(const Tridiagonal& t, double x) {
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

} // namespace detail

/// Smallest eigenvalue by Householder tridiagonalization and Sturm bisection.
/// Independent of the Jacobi path; used where only the extreme value is needed.
inline double symmetric_min_eigenvalue(const SymmetricMatrix<double>& M) {
  const std::size_t m = M.size();
  if (m == 0) throw InvalidArgument("empty matrix has no eigenvalues");
  if (m == 1) return M(0, 0);
  const detail::Tridiagonal t = detail::tridiagonalize(M);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < m; ++i) {
    double r = 0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < m) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * scale || mid == lo || mid == hi) break;
    if (detail::sturm_count(t, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

/// Real diagonal and squared off-diagonal moduli of a Hermitian tridiagonal
/// form; the spectrum depends on nothing else.
struct HermitianTridiagonal {
  std::vector<double> diag;
  std::vector<double> off2; // size n-1
};

// Complex Householder reduction of the Hermitian matrix held row-major in a.
inline HermitianTridiagonal hermitian_tridiagonalize(std::vector<Complex>& a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  HermitianTridiagonal t;
  t.diag.resize(n);
  t.off2.resize(n > 0 ? n - 1 : 0);
  std::vector<Complex> v(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(at(i, k));
    const double norm = std::sqrt(norm2);
    const Complex x0 = at(k + 1, k);
    if (norm == 0.0 || norm2 == std::norm(x0)) {
      t.off2[k] = norm2;
      continue;
    }
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0 ? x0 / ax0 : Complex(1.0);
    const Complex alpha = -phase * norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = at(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // A <- A - 2 v p* - 2 p v* with p = w - (v* w) v, w = A v.
    double kappa = 0;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = 0;
      for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
      w[i] = s;
      kappa += (std::conj(v[i]) * s).real();
    }
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));
    t.off2[k] = norm2;
  }
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = at(i, i).real();
  if (n >= 2) t.off2[n - 2] = std::norm(at(n - 1, n - 2));
  return t;
}

inline std::size_t sturm_count(const HermitianTridiagonal& t, double x) {
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - (i == 0 ? 0.0 : t.off2[i - 1] / q);
    if (q == 0.0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

// Newton on det(T - xI) from a point below the smallest eigenvalue. The
// iterates increase monotonically and never pass it. Returns NaN if the
// start is not below the spectrum or the iteration stalls.
inline double newton_from_below(const HermitianTridiagonal& t, double x, double tol) {
  const std::size_t n = t.diag.size();
  for (int it = 0; it < 200; ++it) {
    double q = 0, dq = 0, ratio = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) {
        q = t.diag[0] - x;
        dq = -1.0;
      } else {
        const double e2 = t.off2[i - 1];
        const double qp = q;
        q = t.diag[i] - x - e2 / qp;
        dq = -1.0 + e2 * dq / (qp * qp);
      }
      if (!(q > 0)) return std::numeric_limits<double>::quiet_NaN();
      ratio += dq / q;
    }
    const double step = -1.0 / ratio;
    x += step;
    if (step <= tol) return x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace detail

/// Smallest eigenvalue of a Hermitian matrix. `below`, when finite, is a
/// hint known to lie under the spectrum; it only affects speed.
inline double hermitian_min_eigenvalue(const ComplexMatrixD& H,
                                       double below = std::numeric_limits<double>::quiet_NaN()) {
  const std::size_t n = H.size();
  if (n == 0) throw InvalidArgument("empty matrix has no eigenvalues");
  if (n == 1) return H(0, 0).real();
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = H(i, j);
  const auto t = detail::hermitian_tridiagonalize(a, n);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    if (i > 0) r += std::sqrt(t.off2[i - 1]);
    if (i + 1 < n) r += std::sqrt(t.off2[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  const double tol = 4 * std::numeric_limits<double>::epsilon() * scale;

  const double start = std::isfinite(below) && below > lo ? below : lo;
  double x = detail::newton_from_below(t, start, tol);
  if (std::isnan(x) && start != lo) x = detail::newton_from_below(t, lo, tol);
  if (!std::isnan(x) && detail::sturm_count(t, x - 64 * tol) == 0 && detail::sturm_count(t, x + 64 * tol) >= 1)
    return x;

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid == lo || mid == hi) break;
    if (detail::sturm_count(t, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline double symmetric_max_eigenvalue(const SymmetricMatrix<double>& M) {
  return -symmetric_min_eigenvalue(-M);
}

} // namespace crawford
