#pragma once

#include "qudit/eig.hpp"

namespace qudit {

// Eigendecomposition of a general complex matrix. Eigenpairs ordered
// modulus-ascending (ties: ascending phase angle in [0, 2pi)), eigenvectors
// unit norm with the phase convention applied.
Spectral<double> eig_general(const OpMat<double>& m);

namespace detail {

// Dense LU with partial pivoting; solve in place. Deterministic.
template <class R>
void lu_solve(std::vector<Cx<R>>& A, int d, std::vector<Cx<R>>& b) {
  std::vector<int> piv(static_cast<size_t>(d));
  auto at = [&A, d](int i, int j) -> Cx<R>& { return A[static_cast<size_t>(i) * d + j]; };
  for (int k = 0; k < d; ++k) {
    int p = k;
    R best = cx_norm2(at(k, k));
    for (int i = k + 1; i < d; ++i) {
      R v = cx_norm2(at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv[static_cast<size_t>(k)] = p;
    if (p != k) {
      for (int j = 0; j < d; ++j) std::swap(at(k, j), at(p, j));
      std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(p)]);
    }
    Cx<R> pivot = at(k, k);
    if (cx_norm2(pivot) == R(0)) pivot = Cx<R>(RealOps<R>::eps());  // shifted matrix is near-singular by design
    for (int i = k + 1; i < d; ++i) {
      Cx<R> f = at(i, k) / pivot;
      at(i, k) = f;
      for (int j = k + 1; j < d; ++j) at(i, j) -= f * at(k, j);
      b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
    }
  }
  for (int i = d - 1; i >= 0; --i) {
    Cx<R> acc = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j) acc -= at(i, j) * b[static_cast<size_t>(j)];
    Cx<R> pivot = at(i, i);
    if (cx_norm2(pivot) == R(0)) pivot = Cx<R>(RealOps<R>::eps());
    b[static_cast<size_t>(i)] = acc / pivot;
  }
}

}  // namespace detail

// Polish eigenpairs of M in precision R by shifted inverse iteration plus a
// Rayleigh-quotient update. Used to lift double-precision general eigenpairs
// to the quad lane; two iterations reach working precision for the
// well-separated spectra handled here.
template <class R>
void refine_eigenpairs(const OpMat<R>& m, Spectral<R>& sp, int iterations = 2) {
  const int d = m.dim();
  for (int k = 0; k < sp.size(); ++k) {
    Cx<R> lambda = sp.values[static_cast<size_t>(k)];
    StateVec<R> v = sp.vectors[static_cast<size_t>(k)];
    for (int it = 0; it < iterations; ++it) {
      std::vector<Cx<R>> A = m.a;
      for (int i = 0; i < d; ++i) A[static_cast<size_t>(i) * d + i] -= lambda;
      std::vector<Cx<R>> b = v.amp;
      detail::lu_solve(A, d, b);
      StateVec<R> w(m.grid);
      w.amp = std::move(b);
      v = normalized(std::move(w));
      StateVec<R> mv = apply(m, v);
      lambda = inner(v, mv);  // Rayleigh quotient (v unit)
    }
    phase_fix(v);
    sp.values[static_cast<size_t>(k)] = lambda;
    sp.vectors[static_cast<size_t>(k)] = std::move(v);
  }
}

}  // namespace qudit
