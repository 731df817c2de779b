#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crawford/error.hpp"
#include "crawford/rational.hpp"

namespace crawford {

/// Dense square matrix of doubles-backed complex numbers, row-major.
class ComplexMatrixD {
public:
  ComplexMatrixD() = default;
  explicit ComplexMatrixD(std::size_t n) : n_(n), a_(n * n) {}

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  ComplexMatrixD adjoint() const {
    ComplexMatrixD r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  friend ComplexMatrixD operator*(Complex s, ComplexMatrixD m) {
    for (auto& x : m.a_) x *= s;
    return m;
  }
  friend ComplexMatrixD operator+(ComplexMatrixD a, const ComplexMatrixD& b) {
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
    return a;
  }

  double frobenius_norm() const {
    double s = 0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
  }

private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

/// Square matrix over Q[i]; the exact input object.
class ComplexMatrix {
public:
  explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {
    if (n == 0) throw InvalidArgument("matrix dimension must be positive");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
    return m;
  }

  static ComplexMatrix diagonal(std::span<const GaussianRational> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const { return n_; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const GaussianRational> entries() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_hermitian() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i).conj()) return false;
    return true;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = (*this)(j, i).conj();
    return r;
  }

  GaussianRational trace() const {
    GaussianRational t;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrixD to_double() const {
    ComplexMatrixD r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = (*this)(i, j).to_complex();
    return r;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(const GaussianRational& s, ComplexMatrix m) {
    for (auto& x : m.a_) x *= s;
    return m;
  }
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

private:
  void check_same(const ComplexMatrix& o) const {
    if (o.n_ != n_) throw InvalidArgument("matrix dimension mismatch");
  }

  std::size_t n_;
  std::vector<GaussianRational> a_;
};

/// Real symmetric matrix with full dense storage. Writes go through set(),
/// which mirrors the entry, so a(i,j) == a(j,i) holds exactly.
template <class T>
class SymmetricMatrix {
public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t m) : m_(m), a_(m * m, T(0)) {}

  static SymmetricMatrix identity(std::size_t m) {
    SymmetricMatrix r(m);
    for (std::size_t i = 0; i < m; ++i) r.set(i, i, T(1));
    return r;
  }

  std::size_t size() const { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }
  void set(std::size_t i, std::size_t j, const T& v) {
    a_[i * m_ + j] = v;
    a_[j * m_ + i] = v;
  }
  void add(std::size_t i, std::size_t j, const T& v) {
    a_[i * m_ + j] += v;
    if (i != j) a_[j * m_ + i] += v;
  }
  std::span<const T> data() const { return a_; }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < m_; ++i) t += (*this)(i, i);
    return t;
  }

  template <class U>
  SymmetricMatrix<U> cast() const;

  SymmetricMatrix& operator+=(const SymmetricMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  SymmetricMatrix& operator-=(const SymmetricMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  SymmetricMatrix& operator*=(const T& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
  friend SymmetricMatrix operator*(const T& s, SymmetricMatrix a) { return a *= s; }
  SymmetricMatrix operator-() const {
    SymmetricMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_ == b.m_ && a.a_ == b.a_;
  }

private:
  std::size_t m_ = 0;
  std::vector<T> a_;
};

template <class T>
template <class U>
SymmetricMatrix<U> SymmetricMatrix<T>::cast() const {
  SymmetricMatrix<U> r(m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = i; j < m_; ++j) {
      if constexpr (std::is_same_v<T, Rational> && std::is_same_v<U, double>)
        r.set(i, j, to_double((*this)(i, j)));
      else
        r.set(i, j, static_cast<U>((*this)(i, j)));
    }
  return r;
}

/// Trace inner product tr(AB) = sum_ij a_ij b_ij.
template <class T>
T inner(const SymmetricMatrix<T>& a, const SymmetricMatrix<T>& b) {
  if (a.size() != b.size()) throw InvalidArgument("inner product of matrices of different size");
  T s(0);
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

inline double frobenius_norm(const SymmetricMatrix<double>& a) { return std::sqrt(inner(a, a)); }

} // namespace crawford
