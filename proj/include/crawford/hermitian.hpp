#pragma once

#include <cmath>
#include <utility>

#include "crawford/eigen.hpp"
#include "crawford/matrix.hpp"
#include "crawford/rational.hpp"

namespace crawford {

/// C = A + iB with A, B Hermitian, together with their real embeddings.
struct HermitianPencil {
  ComplexMatrix A;
  ComplexMatrix B;
  SymmetricMatrix<Rational> Ahat;
  SymmetricMatrix<Rational> Bhat;

  std::size_t size() const { return A.size(); }
};

/// Real symmetric 2n x 2n embedding [Re H, -Im H; Im H, Re H] of a Hermitian H.
inline SymmetricMatrix<Rational> hat_embed(const ComplexMatrix& H) {
  if (!H.is_hermitian()) throw InvalidArgument("hat_embed requires a Hermitian matrix");
  const std::size_t n = H.size();
  SymmetricMatrix<Rational> out(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto& h = H(i, j);
      out.set(i, j, h.re);
      out.set(n + i, n + j, h.re);
      out.set(i, n + j, -h.im);
      out.set(j, n + i, h.im);
    }
  return out;
}

/// Floating-point hat embedding; the input is assumed Hermitian and only its
/// upper triangle is read.
inline SymmetricMatrix<double> hat_embed(const ComplexMatrixD& H) {
  const std::size_t n = H.size();
  SymmetricMatrix<double> out(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex h = H(i, j);
      out.set(i, j, h.real());
      out.set(n + i, n + j, h.real());
      out.set(i, n + j, -h.imag());
      out.set(j, n + i, h.imag());
    }
  return out;
}

/// Inverse of hat_embed. Averages the two diagonal blocks and the two
/// off-diagonal blocks, so it also projects a near-hat matrix onto the image.
inline ComplexMatrixD unhat(const SymmetricMatrix<double>& Y) {
  const std::size_t n = Y.size() / 2;
  ComplexMatrixD H(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = 0.5 * (Y(i, j) + Y(n + i, n + j));
      const double im = 0.5 * (Y(n + i, j) - Y(i, n + j));
      H(i, j) = {re, im};
    }
  return H;
}

inline HermitianPencil hermitian_split(const ComplexMatrix& C) {
  const std::size_t n = C.size();
  ComplexMatrix A(n), B(n);
  const GaussianRational half(Rational(1, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GaussianRational cij = C(i, j);
      const GaussianRational cji_bar = C(j, i).conj();
      A(i, j) = half * (cij + cji_bar);
      // (c - c*)/(2i) = -i/2 (c - c*)
      B(i, j) = GaussianRational(0, Rational(-1, 2)) * (cij - cji_bar);
    }
  auto Ahat = hat_embed(A);
  auto Bhat = hat_embed(B);
  return {std::move(A), std::move(B), std::move(Ahat), std::move(Bhat)};
}

/// Floating-point Hermitian parts (A, B) of C.
inline std::pair<ComplexMatrixD, ComplexMatrixD> hermitian_parts(const ComplexMatrixD& C) {
  const std::size_t n = C.size();
  ComplexMatrixD A(n), B(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex c = C(i, j);
      const Complex d = std::conj(C(j, i));
      A(i, j) = 0.5 * (c + d);
      B(i, j) = Complex(0, -0.5) * (c - d);
    }
  return {A, B};
}

/// <H1, H2> = tr(H1 H2), real for Hermitian arguments.
inline Rational hermitian_inner(const ComplexMatrix& H1, const ComplexMatrix& H2) {
  if (H1.size() != H2.size()) throw InvalidArgument("inner product of matrices of different size");
  GaussianRational s;
  for (std::size_t i = 0; i < H1.size(); ++i)
    for (std::size_t j = 0; j < H1.size(); ++j) s += H1(i, j) * H2(j, i);
  return s.re;
}

inline double hermitian_inner(const ComplexMatrixD& H1, const ComplexMatrixD& H2) {
  Complex s = 0;
  for (std::size_t i = 0; i < H1.size(); ++i)
    for (std::size_t j = 0; j < H1.size(); ++j) s += H1(i, j) * H2(j, i);
  return s.real();
}

inline Rational frobenius_norm_squared(const ComplexMatrix& C) {
  Rational s = 0;
  for (const auto& x : C.entries()) s += x.norm_squared();
  return s;
}

/// Exact ceil(||C||_F): the least k with k^2 >= ||C||_F^2, by integer arithmetic.
inline Integer frobenius_ceiling(const ComplexMatrix& C) {
  const Rational f2 = frobenius_norm_squared(C);
  if (f2 == 0) throw InvalidArgument("frobenius_ceiling of the zero matrix");
  // k^2 >= p/q  <=>  k^2 >= ceil(p/q) for integer k.
  const Integer p = boost::multiprecision::numerator(f2);
  const Integer q = boost::multiprecision::denominator(f2);
  const Integer target = (p + q - 1) / q;
  Integer k = boost::multiprecision::sqrt(target);
  if (k * k < target) ++k;
  return k;
}

struct ScaledMatrix {
  ComplexMatrix matrix; // Gaussian-integer entries
  Integer scale;        // matrix = scale * original
};

/// Multiplies C by the product of all entry denominators (real and imaginary
/// parts), which yields Gaussian-integer entries.
inline ScaledMatrix clear_denominators(const ComplexMatrix& C) {
  Integer ell = 1;
  for (const auto& x : C.entries()) {
    ell *= boost::multiprecision::denominator(x.re);
    ell *= boost::multiprecision::denominator(x.im);
  }
  ComplexMatrix scaled = GaussianRational(Rational(ell)) * C;
  return {std::move(scaled), ell};
}

} // namespace crawford
