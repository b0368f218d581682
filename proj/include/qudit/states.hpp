#pragma once

#include <vector>

#include "qudit/eig_general.hpp"
#include "qudit/kravchuk.hpp"
#include "qudit/operators.hpp"
#include "qudit/theta.hpp"

namespace qudit {

enum class Family {
  gaussian,
  commutator_eigen,
  coherent,
  creation_power,
  oscillator,
  quantized,
  harper,
  annihilation,
  mehta,
  kravchuk,
};

template <class R>
struct FamilyState {
  Family family;
  int index;
  StateVec<R> state;
};

// || F g_kappa - g_{1/kappa} ||
template <class R>
R fourier_of_gaussian_check(Grid g, R kappa) {
  StateVec<R> gk = discrete_gaussian<R>(g, kappa);
  StateVec<R> gik = discrete_gaussian<R>(g, R(1) / kappa);
  StateVec<R> fgk = apply(dft_matrix<R>(g), gk);
  R acc(0);
  for (int i = 0; i < g.d; ++i) acc += cx_norm2(fgk.amp[static_cast<size_t>(i)] - gik.amp[static_cast<size_t>(i)]);
  return RealOps<R>::sqrt(acc);
}

// Eigenpairs of the commutator defect C, via the Hermitian reduction -iC,
// ordered by ascending eigenvalue modulus (ties: ascending signed value).
// Values carry the re-attached factor i.
template <class R>
Spectral<R> commutator_eigenbasis(Grid g) {
  OpMat<R> c = commutator_defect_matrix<R>(g);
  OpMat<R> herm(g);
  for (size_t i = 0; i < c.a.size(); ++i) {
    const Cx<R>& z = c.a[i];
    herm.a[i] = Cx<R>(z.imag(), -z.real());  // -i*z
  }
  herm = tagged(std::move(herm), Structure::hermitian);
  Spectral<R> sp = by_modulus(eig_hermitian(herm));
  for (auto& v : sp.values) v = Cx<R>(R(0), v.real());  // lambda = i*mu
  return sp;
}

// |n,k> built by displacing the kappa=1 Gaussian vacuum. weighted=true gives
// the 1/sqrt(d)-scaled member of the resolution-of-identity family (norm
// 1/sqrt(d)); weighted=false the unit-normalized state.
template <class R>
StateVec<R> coherent_state(Grid g, PhasePoint p, bool weighted = false) {
  require_in_range(g, p);
  ThetaParams<R> tp;
  StateVec<R> v(g);
  const Cx<R> front = unit_phase<R>(-static_cast<long long>(p.n) * p.k, 2LL * g.d);
  for (int m = -g.s; m <= g.s; ++m) {
    v.at(m) = front * unit_phase<R>(static_cast<long long>(p.k) * m, g.d) *
              Cx<R>(theta_value(g, tp, m - p.n));
  }
  v = normalized(std::move(v));
  if (weighted) {
    R w = R(1) / RealOps<R>::sqrt(R(g.d));
    for (auto& z : v.amp) z *= w;
  }
  return v;
}

// (a^dag)^n applied to the Gaussian vacuum, normalized.
template <class R>
StateVec<R> creation_power_state(Grid g, int n, int cap = -1) {
  if (cap < 0) cap = 2 * g.s;
  if (n < 0 || n > cap) throw DomainError("creation_power_state: power out of range");
  OpMat<R> adag = creation_matrix<R>(g);
  StateVec<R> psi = discrete_gaussian<R>(g, R(1));
  for (int k = 0; k < n; ++k) psi = apply(adag, psi);
  if (norm(psi) < R(1e-200)) throw DomainError("creation_power_state: vector vanished before normalization");
  return normalized(std::move(psi));
}

template <class R>
std::vector<StateVec<R>> eigenstates_of(const OpMat<R>& h) {
  Spectral<R> sp = eig_hermitian(h);
  return std::move(sp.vectors);
}

template <class R>
std::vector<StateVec<R>> oscillator_eigenstates(Grid g) {
  return eigenstates_of(oscillator_hamiltonian<R>(g));
}

template <class R>
std::vector<StateVec<R>> harper_eigenstates(Grid g) {
  return eigenstates_of(harper_hamiltonian<R>(g));
}

// Eigenvectors of the annihilation operator, modulus-ascending by eigenvalue.
// The double-precision Schur solve is lifted to higher precision (when R is
// not double) by inverse-iteration refinement against the R-precision matrix.
template <class R>
std::vector<StateVec<R>> annihilation_eigenstates(Grid g) {
  Spectral<double> base = eig_general(annihilation_matrix<double>(g));
  if constexpr (std::is_same_v<R, double>) {
    return std::move(base.vectors);
  } else {
    OpMat<R> a = annihilation_matrix<R>(g);
    Spectral<R> lifted;
    lifted.ordering = base.ordering;
    for (int k = 0; k < base.size(); ++k) {
      lifted.values.push_back(Cx<R>(R(base.values[static_cast<size_t>(k)].real()),
                                    R(base.values[static_cast<size_t>(k)].imag())));
      lifted.vectors.push_back(cast_state<R>(base.vectors[static_cast<size_t>(k)]));
    }
    refine_eigenpairs(a, lifted);
    return std::move(lifted.vectors);
  }
}

namespace detail {

// Periodized Hermite-times-Gaussian sum with the Gaussian applied inside the
// three-term recurrence, so no intermediate overflows:
//   t_0 = G, t_1 = 2*(scale*x)*G, t_{k+1} = 2*(scale*x)*t_k - 2k*t_{k-1},
// where G = exp(-pi x^2/d). Values are computed for m >= 0 and mirrored with
// the parity (-1)^n, which the exact sum obeys.
template <class R>
StateVec<R> hermite_gauss_periodized(Grid g, int n, R scale, const ThetaParams<R>& tp) {
  if (n < 0) throw DomainError("hermite_gauss_periodized: negative order");
  // certify: first omitted term, evaluated directly
  {
    R x = R((tp.trunc_radius + 1) * g.d - g.s);
    R gaussian = RealOps<R>::exp(-RealOps<R>::pi() * x * x / R(g.d));
    R h0 = gaussian, h1 = R(2) * scale * x * gaussian;
    R hn = (n == 0) ? h0 : h1;
    for (int k = 1; k < n; ++k) {
      R next = R(2) * scale * x * h1 - R(2 * k) * h0;
      h0 = h1;
      h1 = next;
      hn = next;
    }
    if (!(RealOps<R>::abs(hn) < tp.tail_tol)) {
      throw TruncationError("hermite_gauss_periodized: tail tolerance unreachable");
    }
  }
  StateVec<R> v(g);
  for (int m = 0; m <= g.s; ++m) {
    R acc(0);
    for (int a = -tp.trunc_radius; a <= tp.trunc_radius; ++a) {
      R x = R(m + a * g.d);
      R gaussian = RealOps<R>::exp(-RealOps<R>::pi() * x * x / R(g.d));
      R h0 = gaussian, h1 = R(2) * scale * x * gaussian;
      R hn = (n == 0) ? h0 : h1;
      for (int k = 1; k < n; ++k) {
        R next = R(2) * scale * x * h1 - R(2 * k) * h0;
        h0 = h1;
        h1 = next;
        hn = next;
      }
      acc += hn;
    }
    v.at(m) = Cx<R>(acc);
    v.at(-m) = (n % 2 == 0) ? Cx<R>(acc) : Cx<R>(-acc);
  }
  v.at(0) = (n % 2 == 0) ? v.at(0) : Cx<R>(0);
  return normalized(std::move(v));
}

}  // namespace detail

// Periodized Hermite-Gaussian ladder with unit Hermite argument; this is the
// construction behind the tabulated reference values (its n=0 member is
// exactly the kappa=1 Gaussian).
template <class R>
StateVec<R> mehta_state(Grid g, int n, const ThetaParams<R>& tp = ThetaParams<R>{}) {
  return detail::hermite_gauss_periodized(g, n, R(1), tp);
}

// Same ladder with the Hermite argument scaled by sqrt(2*pi/d); these states
// are exact discrete-Fourier eigenvectors with eigenvalue (-i)^n.
template <class R>
StateVec<R> mehta_fourier_state(Grid g, int n, const ThetaParams<R>& tp = ThetaParams<R>{}) {
  R scale = RealOps<R>::sqrt(R(2) * RealOps<R>::pi() / R(g.d));
  return detail::hermite_gauss_periodized(g, n, scale, tp);
}

}  // namespace qudit
