#pragma once

#include "qudit/eig.hpp"
#include "qudit/matrix.hpp"

namespace qudit {

// Discrete phase-space label (n, k), both components in {-s,...,s}.
struct PhasePoint {
  int n = 0;
  int k = 0;
};

inline void require_in_range(Grid g, PhasePoint p) {
  if (!g.in_range(p.n) || !g.in_range(p.k)) {
    throw DomainError("phase point (" + std::to_string(p.n) + "," + std::to_string(p.k) +
                      ") out of range for d=" + std::to_string(g.d));
  }
}

// F[k,n] = exp(-2*pi*i*k*n/d)/sqrt(d)
template <class R>
OpMat<R> dft_matrix(Grid g) {
  OpMat<R> f(g);
  const R inv_sqrt_d = R(1) / RealOps<R>::sqrt(R(g.d));
  for (int k = -g.s; k <= g.s; ++k) {
    for (int n = -g.s; n <= g.s; ++n) {
      f.at(k, n) = unit_phase<R>(-static_cast<long long>(k) * n, g.d) * inv_sqrt_d;
    }
  }
  f.tag = Structure::unitary;
  return f;
}

// q = diag(-s,...,s)
template <class R>
OpMat<R> position_matrix(Grid g) {
  OpMat<R> q(g);
  for (int n = -g.s; n <= g.s; ++n) q.at(n, n) = Cx<R>(R(n));
  q.tag = Structure::hermitian;
  return q;
}

// p = F^dag q F
template <class R>
OpMat<R> momentum_matrix(Grid g) {
  OpMat<R> f = dft_matrix<R>(g);
  OpMat<R> p = compose(adjoint(f), compose(position_matrix<R>(g), f));
  return tagged(std::move(p), Structure::hermitian);
}

// C = [q,p] - i*(d/2pi)*I, the commutator defect
template <class R>
OpMat<R> commutator_defect_matrix(Grid g) {
  OpMat<R> c = commutator(position_matrix<R>(g), momentum_matrix<R>(g));
  const R shift = R(g.d) / (R(2) * RealOps<R>::pi());
  for (int n = -g.s; n <= g.s; ++n) c.at(n, n) -= Cx<R>(R(0), shift);
  return tagged(std::move(c), Structure::anti_hermitian);
}

// a = sqrt(pi/d)(q + i p)
template <class R>
OpMat<R> annihilation_matrix(Grid g) {
  const R c = RealOps<R>::sqrt(RealOps<R>::pi() / R(g.d));
  OpMat<R> q = position_matrix<R>(g);
  OpMat<R> p = momentum_matrix<R>(g);
  OpMat<R> a(g);
  for (size_t i = 0; i < a.a.size(); ++i) a.a[i] = Cx<R>(c) * (q.a[i] + Cx<R>(R(0), R(1)) * p.a[i]);
  return a;
}

// a^dag = sqrt(pi/d)(q - i p)
template <class R>
OpMat<R> creation_matrix(Grid g) {
  const R c = RealOps<R>::sqrt(RealOps<R>::pi() / R(g.d));
  OpMat<R> q = position_matrix<R>(g);
  OpMat<R> p = momentum_matrix<R>(g);
  OpMat<R> a(g);
  for (size_t i = 0; i < a.a.size(); ++i) a.a[i] = Cx<R>(c) * (q.a[i] - Cx<R>(R(0), R(1)) * p.a[i]);
  return a;
}

// (D(n,k) psi)(m) = exp(-pi*i*n*k/d) exp(2*pi*i*k*m/d) psi(m-n), the shift
// m-n wrapped modulo d back into {-s,...,s}.
template <class R>
OpMat<R> displacement_matrix(Grid g, PhasePoint p) {
  require_in_range(g, p);
  OpMat<R> dm(g);
  const Cx<R> front = unit_phase<R>(-static_cast<long long>(p.n) * p.k, 2LL * g.d);
  for (int m = -g.s; m <= g.s; ++m) {
    Cx<R> col = front * unit_phase<R>(static_cast<long long>(p.k) * m, g.d);
    dm.at(m, g.wrap(m - p.n)) = col;
  }
  dm.tag = Structure::unitary;
  return dm;
}

// h = (p^2 + q^2)/2
template <class R>
OpMat<R> oscillator_hamiltonian(Grid g) {
  OpMat<R> q = position_matrix<R>(g);
  OpMat<R> p = momentum_matrix<R>(g);
  OpMat<R> h = add(compose(p, p), compose(q, q));
  for (auto& z : h.a) z *= Cx<R>(R(0.5));
  return tagged(std::move(h), Structure::hermitian);
}

// Finite-difference oscillator: (4 - 2cos(2*pi*n/d)) on the diagonal, -1 on
// the two cyclic off-diagonals.
template <class R>
OpMat<R> harper_hamiltonian(Grid g) {
  OpMat<R> h(g);
  for (int i = 0; i < g.d; ++i) {
    int n = g.logical(i);
    h.at_storage(i, i) = Cx<R>(R(4) - R(2) * RealOps<R>::cos(R(2) * RealOps<R>::pi() * R(n) / R(g.d)));
    h.at_storage(i, (i + 1) % g.d) -= Cx<R>(R(1));
    h.at_storage(i, (i - 1 + g.d) % g.d) -= Cx<R>(R(1));
  }
  h.tag = Structure::hermitian;
  return h;
}

}  // namespace qudit
