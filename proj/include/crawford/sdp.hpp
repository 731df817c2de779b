#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "crawford/hermitian.hpp"
#include "crawford/matrix.hpp"

namespace crawford {

/// Element of H_2n(R) (+) H_2(R) (+) H_1(R), written diag(Y, [u v; v w], t).
template <class T>
struct BlockDiagSymmetric {
  std::array<SymmetricMatrix<T>, 3> blocks;

  BlockDiagSymmetric() = default;
  explicit BlockDiagSymmetric(std::size_t n)
      : blocks{SymmetricMatrix<T>(2 * n), SymmetricMatrix<T>(2), SymmetricMatrix<T>(1)} {}
  BlockDiagSymmetric(SymmetricMatrix<T> Y, SymmetricMatrix<T> T2, T t)
      : blocks{std::move(Y), std::move(T2), SymmetricMatrix<T>(1)} {
    blocks[2].set(0, 0, t);
  }

  std::size_t n() const { return blocks[0].size() / 2; }
  std::size_t dimension() const { return blocks[0].size() + 3; }

  const SymmetricMatrix<T>& Y() const { return blocks[0]; }
  T u() const { return blocks[1](0, 0); }
  T v() const { return blocks[1](0, 1); }
  T w() const { return blocks[1](1, 1); }
  T t() const { return blocks[2](0, 0); }

  /// Block index and in-block offset for a global coordinate.
  static std::pair<std::size_t, std::size_t> locate(std::size_t n, std::size_t i) {
    if (i < 2 * n) return {0, i};
    if (i < 2 * n + 2) return {1, i - 2 * n};
    return {2, 0};
  }

  SymmetricMatrix<T> to_full() const {
    const std::size_t m = dimension();
    const std::size_t two_n = blocks[0].size();
    SymmetricMatrix<T> out(m);
    const std::array<std::size_t, 3> offset{0, two_n, two_n + 2};
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < blocks[b].size(); ++i)
        for (std::size_t j = i; j < blocks[b].size(); ++j) out.set(offset[b] + i, offset[b] + j, blocks[b](i, j));
    return out;
  }

  /// Block-diagonal part of a full (2n+3)-dimensional symmetric matrix.
  static BlockDiagSymmetric block_part(const SymmetricMatrix<T>& full) {
    const std::size_t n = (full.size() - 3) / 2;
    BlockDiagSymmetric out(n);
    const std::array<std::size_t, 3> offset{0, 2 * n, 2 * n + 2};
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < out.blocks[b].size(); ++i)
        for (std::size_t j = i; j < out.blocks[b].size(); ++j)
          out.blocks[b].set(i, j, full(offset[b] + i, offset[b] + j));
    return out;
  }

  template <class U>
  BlockDiagSymmetric<U> cast() const {
    BlockDiagSymmetric<U> r;
    for (std::size_t b = 0; b < 3; ++b) r.blocks[b] = blocks[b].template cast<U>();
    return r;
  }

  BlockDiagSymmetric& operator+=(const BlockDiagSymmetric& o) {
    for (std::size_t b = 0; b < 3; ++b) blocks[b] += o.blocks[b];
    return *this;
  }
  BlockDiagSymmetric& operator-=(const BlockDiagSymmetric& o) {
    for (std::size_t b = 0; b < 3; ++b) blocks[b] -= o.blocks[b];
    return *this;
  }
  BlockDiagSymmetric& operator*=(const T& s) {
    for (auto& blk : blocks) blk *= s;
    return *this;
  }
  friend BlockDiagSymmetric operator+(BlockDiagSymmetric a, const BlockDiagSymmetric& b) { return a += b; }
  friend BlockDiagSymmetric operator-(BlockDiagSymmetric a, const BlockDiagSymmetric& b) { return a -= b; }
  friend BlockDiagSymmetric operator*(const T& s, BlockDiagSymmetric a) { return a *= s; }
  friend bool operator==(const BlockDiagSymmetric& a, const BlockDiagSymmetric& b) { return a.blocks == b.blocks; }
};

template <class T>
T inner(const BlockDiagSymmetric<T>& a, const BlockDiagSymmetric<T>& b) {
  return inner(a.blocks[0], b.blocks[0]) + inner(a.blocks[1], b.blocks[1]) + inner(a.blocks[2], b.blocks[2]);
}

/// <F, Z> for a full symmetric F against a block-diagonal Z.
template <class T>
T inner(const SymmetricMatrix<T>& full, const BlockDiagSymmetric<T>& z) {
  return inner(BlockDiagSymmetric<T>::block_part(full), z);
}

inline double frobenius_norm(const BlockDiagSymmetric<double>& z) { return std::sqrt(inner(z, z)); }

/// Standard-form SDP  min <F0, Z>  s.t.  <F_i, Z> = b_i,  Z in H_{2n+3,+}(R),
/// whose optimum is the Crawford number of the generating matrix.
struct SdpInstance {
  std::size_t n = 0;
  std::size_t N = 0; // number of subspace constraints, n^2 + 7n + 2
  Integer frob_ceiling = 0;
  BlockDiagSymmetric<Rational> objective;
  std::vector<SymmetricMatrix<Rational>> constraints; // F_1 ... F_{N+4}, each (2n+3)-dimensional
  std::vector<Rational> rhs;

  std::array<std::size_t, 3> block_sizes() const { return {2 * n, 2, 1}; }
  std::size_t dimension() const { return 2 * n + 3; }
};

inline std::size_t subspace_codimension(std::size_t n) { return n * n + 7 * n + 2; }

/// [[r+x, y], [y, r-x]], positive semidefinite exactly when r >= |x + iy|.
inline SymmetricMatrix<double> modulus_psd_block(double x, double y, double r) {
  SymmetricMatrix<double> m(2);
  m.set(0, 0, r + x);
  m.set(0, 1, y);
  m.set(1, 1, r - x);
  return m;
}

namespace detail {

template <class T>
SymmetricMatrix<T> unit_pair(std::size_t m, std::size_t i, std::size_t j) {
  SymmetricMatrix<T> e(m);
  e.set(i, j, T(1));
  return e;
}

} // namespace detail

/// F_1 ... F_N with entries in {-1, 0, 1} whose common kernel (under the trace
/// inner product) is exactly Hhat_n(C) (+) H_2(R) (+) H_1(R) inside H_{2n+3}(R).
/// Families, in order (0-based indices, E_ij = e_i e_j^T + e_j e_i^T pattern):
///   E_ij            i < 2n <= j            couplings of Y to (u, w, t)
///   E_{2n,2n+2}, E_{2n+1,2n+2}            couplings of the 2x2 block to t
///   E_{i,n+i}                              zero diagonal of the Im block
///   E_{i,n+j} + E_{j,n+i}     i < j        antisymmetric Im block
///   E_ij - E_{n+i,n+j}        i <= j       equal Re blocks
template <class T = Rational>
std::vector<SymmetricMatrix<T>> subspace_basis(std::size_t n) {
  if (n == 0) throw InvalidArgument("subspace_basis requires n >= 1");
  const std::size_t m = 2 * n + 3;
  std::vector<SymmetricMatrix<T>> out;
  out.reserve(subspace_codimension(n));
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 2 * n; j < m; ++j) out.push_back(detail::unit_pair<T>(m, i, j));
  out.push_back(detail::unit_pair<T>(m, 2 * n, 2 * n + 2));
  out.push_back(detail::unit_pair<T>(m, 2 * n + 1, 2 * n + 2));
  for (std::size_t i = 0; i < n; ++i) out.push_back(detail::unit_pair<T>(m, i, n + i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto e = detail::unit_pair<T>(m, i, n + j);
      e.set(j, n + i, T(1));
      out.push_back(std::move(e));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto e = detail::unit_pair<T>(m, i, j);
      e.set(n + i, n + j, T(-1));
      out.push_back(std::move(e));
    }
  return out;
}

/// Spanning set of Hhat_n(C) (+) H_2(R) (+) H_1(R): hats of the real
/// symmetric units, hats of i times the antisymmetric units, then the three
/// units of the 2x2 block and the unit of the 1x1 block. n^2 + 4 elements.
template <class T = double>
std::vector<BlockDiagSymmetric<T>> block_subspace_spanning_set(std::size_t n) {
  std::vector<BlockDiagSymmetric<T>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      BlockDiagSymmetric<T> z(n);
      z.blocks[0].set(i, j, T(1));
      z.blocks[0].set(n + i, n + j, T(1));
      out.push_back(std::move(z));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // H = i(e_i e_j^T - e_j e_i^T): Im H has +1 at (i,j) and -1 at (j,i).
      BlockDiagSymmetric<T> z(n);
      z.blocks[0].set(i, n + j, T(-1));
      z.blocks[0].set(j, n + i, T(1));
      out.push_back(std::move(z));
    }
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 1}, {1, 1}}) {
    BlockDiagSymmetric<T> z(n);
    z.blocks[1].set(i, j, T(1));
    out.push_back(std::move(z));
  }
  BlockDiagSymmetric<T> s(n);
  s.blocks[2].set(0, 0, T(1));
  out.push_back(std::move(s));
  return out;
}

/// Assembles F_0 ... F_{N+4} and b for the pencil of a nonzero matrix whose
/// Frobenius-norm ceiling is frob_ceiling.
inline SdpInstance build_instance(const HermitianPencil& pencil, const Integer& frob_ceiling) {
  const std::size_t n = pencil.size();
  if (pencil.A.is_zero() && pencil.B.is_zero()) throw InvalidArgument("build_instance: zero pencil");
  if (frob_ceiling <= 0) throw InvalidArgument("build_instance: Frobenius ceiling must be positive");

  SdpInstance inst;
  inst.n = n;
  inst.N = subspace_codimension(n);
  inst.frob_ceiling = frob_ceiling;
  const std::size_t m = 2 * n + 3;
  const std::size_t iu = 2 * n, iw = 2 * n + 1, it = 2 * n + 2;

  inst.objective = BlockDiagSymmetric<Rational>(n);
  inst.objective.blocks[1].set(0, 0, Rational(1, 2));
  inst.objective.blocks[1].set(1, 1, Rational(1, 2));

  inst.constraints = subspace_basis<Rational>(n);
  inst.rhs.assign(inst.N, Rational(0));

  auto embed_negated = [&](const SymmetricMatrix<Rational>& hat) {
    SymmetricMatrix<Rational> f(m);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = i; j < 2 * n; ++j) f.set(i, j, -hat(i, j));
    return f;
  };

  SymmetricMatrix<Rational> f1 = embed_negated(pencil.Ahat);
  f1.set(iu, iu, 1);
  f1.set(iw, iw, -1);
  SymmetricMatrix<Rational> f2 = embed_negated(pencil.Bhat);
  f2.set(iu, iw, 1);
  SymmetricMatrix<Rational> f3(m);
  for (std::size_t i = 0; i < 2 * n; ++i) f3.set(i, i, 1);
  SymmetricMatrix<Rational> f4(m);
  f4.set(iu, iu, 1);
  f4.set(iw, iw, 1);
  f4.set(it, it, 2);

  inst.constraints.push_back(std::move(f1));
  inst.constraints.push_back(std::move(f2));
  inst.constraints.push_back(std::move(f3));
  inst.constraints.push_back(std::move(f4));
  inst.rhs.push_back(0);
  inst.rhs.push_back(0);
  inst.rhs.push_back(2);
  inst.rhs.push_back(Rational(2 * (frob_ceiling + 2)));
  return inst;
}

/// Rank of a list of vectors by Gaussian elimination with partial pivoting.
/// Exact for Rational; for double, pivots below tol count as zero.
template <class T>
std::size_t matrix_rank(std::vector<std::vector<T>> rows, double tol = 1e-10) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      using std::abs;
      if (abs(rows[r][c]) > abs(rows[pivot][c])) pivot = r;
    }
    using std::abs;
    const bool zero = [&] {
      if constexpr (std::is_same_v<T, double>)
        return abs(rows[pivot][c]) <= tol;
      else
        return rows[pivot][c] == 0;
    }();
    if (zero) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const T f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Gram matrix rank of a family of symmetric matrices under the trace inner product.
template <class T>
std::size_t gram_rank(const std::vector<SymmetricMatrix<T>>& family) {
  std::vector<std::vector<T>> gram(family.size(), std::vector<T>(family.size()));
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a; b < family.size(); ++b) gram[a][b] = gram[b][a] = inner(family[a], family[b]);
  return matrix_rank(std::move(gram));
}

} // namespace crawford
