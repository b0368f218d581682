#pragma once

#include "qudit/state.hpp"

namespace qudit {

// Parameters of the periodized-Gaussian series
//   g_kappa(n) = sum_alpha exp(-kappa*pi*(n + alpha*d)^2 / d),
// summed over alpha in [-trunc_radius, trunc_radius].
template <class R>
struct ThetaParams {
  R kappa = R(1);
  int trunc_radius = 10;
  R tail_tol = R(1e-30);
};

// Certify that the first omitted term is below tail_tol at the worst grid
// point; throws TruncationError otherwise.
template <class R>
void certify_truncation(Grid g, const ThetaParams<R>& p) {
  if (!(p.kappa > R(0))) throw DomainError("theta: kappa must be positive");
  if (p.trunc_radius < 1) throw DomainError("theta: truncation radius must be >= 1");
  // smallest |n + alpha*d| over omitted |alpha| = A+1 and n in [-s, s]
  R x = R((p.trunc_radius + 1) * g.d - g.s);
  R first_omitted = RealOps<R>::exp(-p.kappa * RealOps<R>::pi() * x * x / R(g.d));
  if (!(first_omitted < p.tail_tol)) {
    throw TruncationError("theta truncation cannot reach requested tail tolerance");
  }
}

// Series value at integer m (any integer; the sum is exactly d-periodic, so m
// is wrapped first, which also keeps the terms well scaled).
template <class R>
R theta_value(Grid g, const ThetaParams<R>& p, int m) {
  int n = g.wrap(m);
  if (n < 0) n = -n;  // the series is even in n
  R acc(0);
  const R w = p.kappa * RealOps<R>::pi() / R(g.d);
  for (int a = -p.trunc_radius; a <= p.trunc_radius; ++a) {
    R x = R(n + a * g.d);
    acc += RealOps<R>::exp(-w * x * x);
  }
  return acc;
}

// Normalized discrete Gaussian. Real, strictly positive, exactly even by
// construction (values computed once per |n| and mirrored).
template <class R>
StateVec<R> discrete_gaussian(Grid g, const ThetaParams<R>& p) {
  certify_truncation(g, p);
  StateVec<R> v(g);
  for (int n = 0; n <= g.s; ++n) {
    R t = theta_value(g, p, n);
    v.at(n) = Cx<R>(t);
    v.at(-n) = Cx<R>(t);
  }
  return normalized(std::move(v));
}

template <class R>
StateVec<R> discrete_gaussian(Grid g, R kappa) {
  ThetaParams<R> p;
  p.kappa = kappa;
  return discrete_gaussian(g, p);
}

}  // namespace qudit
