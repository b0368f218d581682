#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "qudit/matrix.hpp"

namespace qudit {

enum class EigOrder { value_ascending, modulus_ascending };

// Ordered eigenpairs. Eigenvectors are unit norm and carry the deterministic
// phase convention: the entry of largest modulus (ties: lowest storage index)
// is real and non-negative.
template <class R>
struct Spectral {
  std::vector<Cx<R>> values;
  std::vector<StateVec<R>> vectors;
  EigOrder ordering = EigOrder::value_ascending;

  int size() const { return static_cast<int>(values.size()); }
};

template <class R>
void phase_fix(StateVec<R>& v) {
  R best(-1);
  for (const auto& z : v.amp) {
    R m = cx_norm2(z);
    if (m > best) best = m;
  }
  if (!(best > R(0))) return;
  // ties resolve to the lowest storage index; moduli within a small relative
  // band count as tied, so symmetric vectors (e.g. odd-parity pairs) pivot
  // stably under last-ulp perturbations of the input
  size_t imax = 0;
  const R band = best * R(1e-12);
  for (size_t i = 0; i < v.amp.size(); ++i) {
    if (cx_norm2(v.amp[i]) >= best - band) {
      imax = i;
      break;
    }
  }
  R mag = cx_abs(v.amp[imax]);
  Cx<R> u = std::conj(v.amp[imax]) / Cx<R>(mag);
  for (auto& z : v.amp) z *= u;
  // pin the pivot entry exactly real
  v.amp[imax] = Cx<R>(cx_abs(v.amp[imax]));
}

namespace detail {

// One cyclic-Jacobi pass over a dense Hermitian matrix held as real diagonal
// plus complex strictly-upper data. The rotation annihilating A[p][q] is the
// standard unitary 2x2 diagonalization; sweeps run in fixed (p,q) order so the
// result is deterministic for identical input.
template <class R>
struct JacobiWork {
  int d;
  std::vector<Cx<R>> A;  // full matrix, kept Hermitian
  std::vector<Cx<R>> V;  // accumulated eigenvectors (columns)

  Cx<R>& a(int i, int j) { return A[static_cast<size_t>(i) * d + j]; }
  Cx<R>& v(int i, int j) { return V[static_cast<size_t>(i) * d + j]; }

  R offdiag_norm2() {
    R acc(0);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) acc += cx_norm2(a(i, j));
    return acc;
  }

  void rotate(int p, int q) {
    Cx<R> apq = a(p, q);
    R mag = cx_abs(apq);
    if (!(mag > R(0))) return;
    Cx<R> u = apq / Cx<R>(mag);  // unit phase of the pivot
    R app = a(p, p).real();
    R aqq = a(q, q).real();
    R tau = (aqq - app) / (R(2) * mag);
    R t = (tau >= R(0)) ? R(1) / (tau + RealOps<R>::sqrt(R(1) + tau * tau))
                        : R(-1) / (-tau + RealOps<R>::sqrt(R(1) + tau * tau));
    R c = R(1) / RealOps<R>::sqrt(R(1) + t * t);
    R s = t * c;
    Cx<R> su = Cx<R>(s) * u;
    Cx<R> su_conj = std::conj(su);

    // columns p and q of A (rows follow by Hermitian symmetry)
    for (int i = 0; i < d; ++i) {
      Cx<R> aip = a(i, p);
      Cx<R> aiq = a(i, q);
      a(i, p) = Cx<R>(c) * aip - su_conj * aiq;
      a(i, q) = su * aip + Cx<R>(c) * aiq;
    }
    for (int j = 0; j < d; ++j) {
      a(p, j) = std::conj(a(j, p));
      a(q, j) = std::conj(a(j, q));
    }
    a(p, p) = Cx<R>(app - t * mag);
    a(q, q) = Cx<R>(aqq + t * mag);
    a(p, q) = Cx<R>(0);
    a(q, p) = Cx<R>(0);

    for (int i = 0; i < d; ++i) {
      Cx<R> vip = v(i, p);
      Cx<R> viq = v(i, q);
      v(i, p) = Cx<R>(c) * vip - su_conj * viq;
      v(i, q) = su * vip + Cx<R>(c) * viq;
    }
  }
};

// Same pass specialised to real symmetric input. Every Hermitian operator in
// this toolkit is real symmetric in the delta basis, and the quad-precision
// lane runs on software floats, so the real path saves most of the work.
template <class R>
struct JacobiWorkReal {
  int d;
  std::vector<R> A;
  std::vector<R> V;

  R& a(int i, int j) { return A[static_cast<size_t>(i) * d + j]; }
  R& v(int i, int j) { return V[static_cast<size_t>(i) * d + j]; }

  R offdiag_norm2() {
    R acc(0);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) acc += a(i, j) * a(i, j);
    return acc;
  }

  void rotate(int p, int q) {
    R apq = a(p, q);
    if (apq == R(0)) return;
    R mag = RealOps<R>::abs(apq);
    R sign = apq / mag;
    R app = a(p, p);
    R aqq = a(q, q);
    R tau = (aqq - app) / (R(2) * mag);
    R t = (tau >= R(0)) ? R(1) / (tau + RealOps<R>::sqrt(R(1) + tau * tau))
                        : R(-1) / (-tau + RealOps<R>::sqrt(R(1) + tau * tau));
    R c = R(1) / RealOps<R>::sqrt(R(1) + t * t);
    R s = t * c * sign;

    for (int i = 0; i < d; ++i) {
      R aip = a(i, p);
      R aiq = a(i, q);
      a(i, p) = c * aip - s * aiq;
      a(i, q) = s * aip + c * aiq;
    }
    for (int j = 0; j < d; ++j) {
      a(p, j) = a(j, p);
      a(q, j) = a(j, q);
    }
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
    a(p, q) = R(0);
    a(q, p) = R(0);

    for (int i = 0; i < d; ++i) {
      R vip = v(i, p);
      R viq = v(i, q);
      v(i, p) = c * vip - s * viq;
      v(i, q) = s * vip + c * viq;
    }
  }
};

template <class Work, class R>
int run_sweeps(Work& w, R stop) {
  const int max_sweeps = 128;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (w.offdiag_norm2() <= stop) return sweep;
    for (int p = 0; p < w.d - 1; ++p)
      for (int q = p + 1; q < w.d; ++q) w.rotate(p, q);
  }
  if (w.offdiag_norm2() > stop) throw ConvergenceError("eig_hermitian: Jacobi sweeps exhausted", sweep);
  return sweep;
}

}  // namespace detail

// Hermitian eigendecomposition via cyclic Jacobi. Real eigenvalues in
// ascending order, orthonormal phase-fixed eigenvectors. Deterministic for
// identical input.
template <class R>
Spectral<R> eig_hermitian(const OpMat<R>& m, R tag_tol = R(1e-12)) {
  if (m.tag != Structure::hermitian) {
    R dev = structure_deviation(m, Structure::hermitian);
    if (dev > tag_tol) throw StructureError("eig_hermitian: input is not hermitian");
  }
  const int d = m.dim();

  // Hermitize the working copy; averages away last-ulp assembly asymmetry.
  std::vector<Cx<R>> H = m.a;
  auto at = [&H, d](int i, int j) -> Cx<R>& { return H[static_cast<size_t>(i) * d + j]; };
  R max_imag(0);
  R max_entry(0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Cx<R> h = (at(i, j) + std::conj(at(j, i))) * Cx<R>(R(0.5));
      at(i, j) = h;
      at(j, i) = std::conj(h);
    }
    at(i, i) = Cx<R>(at(i, i).real());
  }
  for (const auto& z : H) {
    R im = RealOps<R>::abs(z.imag());
    if (im > max_imag) max_imag = im;
    R mg = cx_abs(z);
    if (mg > max_entry) max_entry = mg;
  }

  R fro2(0);
  for (const auto& z : H) fro2 += cx_norm2(z);
  R stop = fro2 * RealOps<R>::eps() * RealOps<R>::eps() * R(d) * R(d) * R(64);

  std::vector<R> diag(static_cast<size_t>(d));
  std::vector<Cx<R>> vecs(static_cast<size_t>(d) * d);

  bool effectively_real = max_imag <= R(64) * RealOps<R>::eps() * max_entry;
  if (effectively_real) {
    detail::JacobiWorkReal<R> w;
    w.d = d;
    w.A.resize(H.size());
    for (size_t i = 0; i < H.size(); ++i) w.A[i] = H[i].real();
    w.V.assign(H.size(), R(0));
    for (int i = 0; i < d; ++i) w.v(i, i) = R(1);
    detail::run_sweeps(w, stop);
    for (int i = 0; i < d; ++i) diag[static_cast<size_t>(i)] = w.a(i, i);
    for (size_t i = 0; i < H.size(); ++i) vecs[i] = Cx<R>(w.V[i]);
  } else {
    detail::JacobiWork<R> w;
    w.d = d;
    w.A = std::move(H);
    w.V.assign(static_cast<size_t>(d) * d, Cx<R>(0));
    for (int i = 0; i < d; ++i) w.v(i, i) = Cx<R>(1);
    detail::run_sweeps(w, stop);
    for (int i = 0; i < d; ++i) diag[static_cast<size_t>(i)] = w.a(i, i).real();
    vecs = std::move(w.V);
  }

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&diag](int x, int y) { return diag[static_cast<size_t>(x)] < diag[static_cast<size_t>(y)]; });

  Spectral<R> out;
  out.ordering = EigOrder::value_ascending;
  out.values.reserve(static_cast<size_t>(d));
  out.vectors.reserve(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) {
    int k = order[static_cast<size_t>(r)];
    out.values.emplace_back(diag[static_cast<size_t>(k)], R(0));
    StateVec<R> vec(m.grid);
    for (int i = 0; i < d; ++i) vec.amp[static_cast<size_t>(i)] = vecs[static_cast<size_t>(i) * d + k];
    vec = normalized(std::move(vec));
    phase_fix(vec);
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

// Reorder a decomposition by ascending |value|. Ties break by ascending
// signed real value when values are real, else by ascending phase in [0,2pi).
template <class R>
Spectral<R> by_modulus(Spectral<R> sp) {
  const int n = sp.size();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto phase_of = [](const Cx<R>& z) {
    // atan2-free phase rank: quadrant + normalized slope keeps this
    // deterministic without trig; exact phase is not needed for ordering.
    R x = z.real(), y = z.imag();
    R ax = RealOps<R>::abs(x), ay = RealOps<R>::abs(y);
    R base, frac;
    R den = ax + ay;
    if (!(den > R(0))) return R(0);
    if (x >= R(0) && y >= R(0)) { base = R(0); frac = ay / den; }
    else if (x < R(0) && y >= R(0)) { base = R(1); frac = ax / den; }
    else if (x < R(0) && y < R(0)) { base = R(2); frac = ay / den; }
    else { base = R(3); frac = ax / den; }
    return base + frac;
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    R mx = cx_abs(sp.values[static_cast<size_t>(x)]);
    R my = cx_abs(sp.values[static_cast<size_t>(y)]);
    if (mx != my) return mx < my;
    const Cx<R>&zx = sp.values[static_cast<size_t>(x)], &zy = sp.values[static_cast<size_t>(y)];
    if (zx.imag() == R(0) && zy.imag() == R(0)) return zx.real() < zy.real();
    return phase_of(zx) < phase_of(zy);
  });
  Spectral<R> out;
  out.ordering = EigOrder::modulus_ascending;
  for (int r = 0; r < n; ++r) {
    int k = order[static_cast<size_t>(r)];
    out.values.push_back(sp.values[static_cast<size_t>(k)]);
    out.vectors.push_back(std::move(sp.vectors[static_cast<size_t>(k)]));
  }
  return out;
}

}  // namespace qudit
