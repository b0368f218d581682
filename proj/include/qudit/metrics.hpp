#pragma once

#include <map>
#include <optional>

#include "qudit/states.hpp"

namespace qudit {

// Prebuilt operators shared by metric evaluations on one grid. All members
// are immutable after construction.
template <class R>
struct CanonContext {
  Grid grid;
  OpMat<R> fourier;
  OpMat<R> position;
  OpMat<R> momentum;
  OpMat<R> comm;    // [q, p]
  OpMat<R> defect;  // [q, p] - i d/(2 pi)

  static CanonContext build(Grid g) {
    CanonContext c{g, dft_matrix<R>(g), position_matrix<R>(g), momentum_matrix<R>(g), OpMat<R>(g),
                   OpMat<R>(g)};
    c.comm = commutator(c.position, c.momentum);
    c.defect = c.comm;
    const R shift = R(g.d) / (R(2) * RealOps<R>::pi());
    for (int n = -g.s; n <= g.s; ++n) c.defect.at(n, n) -= Cx<R>(R(0), shift);
    c.defect.tag = Structure::anti_hermitian;
    return c;
  }
};

template <class R>
void require_unit(const StateVec<R>& psi, const char* where) {
  if (RealOps<R>::abs(norm(psi) - R(1)) > R(1e-8)) {
    throw DomainError(std::string(where) + ": state is not normalized");
  }
}

// ||C psi||
template <class R>
R residual_norm(const CanonContext<R>& ctx, const StateVec<R>& psi) {
  require_same_grid(ctx.grid, psi.grid, "residual_norm");
  require_unit(psi, "residual_norm");
  return norm(apply(ctx.defect, psi));
}

// | |<psi|[q,p]|psi>| - d/(2 pi) |
template <class R>
R expectation_defect(const CanonContext<R>& ctx, const StateVec<R>& psi) {
  require_same_grid(ctx.grid, psi.grid, "expectation_defect");
  require_unit(psi, "expectation_defect");
  Cx<R> e = inner(psi, apply(ctx.comm, psi));
  return RealOps<R>::abs(cx_abs(e) - R(ctx.grid.d) / (R(2) * RealOps<R>::pi()));
}

template <class R>
bool in_S_epsilon(const CanonContext<R>& ctx, const StateVec<R>& psi, R eps) {
  if (!(eps > R(0))) throw DomainError("in_S_epsilon: epsilon must be positive");
  return residual_norm(ctx, psi) < eps;
}

struct CanonicalFraction {
  int count = 0;
  double fraction = 0.0;
};

// Number (and fraction) of commutator-defect eigenvalues with |lambda| < eps.
template <class R>
CanonicalFraction canonical_fraction(int d, R eps) {
  if (!(eps > R(0))) throw DomainError("canonical_fraction: epsilon must be positive");
  Grid g = make_grid(d);
  Spectral<R> sp = commutator_eigenbasis<R>(g);
  int count = 0;
  for (const auto& v : sp.values) {
    if (cx_abs(v) < eps) ++count;
  }
  return {count, static_cast<double>(count) / d};
}

template <class R>
struct UncertaintyProduct {
  R delta_q;
  R delta_p;
  R product;
};

template <class R>
UncertaintyProduct<R> uncertainty_product(const CanonContext<R>& ctx, const StateVec<R>& psi) {
  require_same_grid(ctx.grid, psi.grid, "uncertainty_product");
  require_unit(psi, "uncertainty_product");
  auto variance = [&psi](const OpMat<R>& op) {
    StateVec<R> opsi = apply(op, psi);
    R mean = inner(psi, opsi).real();
    R second(0);
    for (const auto& z : opsi.amp) second += cx_norm2(z);  // <psi|op^2|psi> for hermitian op
    R var = second - mean * mean;
    if (var < R(-1e-12)) throw DomainError("uncertainty_product: negative variance, numerical fault");
    return var < R(0) ? R(0) : var;
  };
  R dq = RealOps<R>::sqrt(variance(ctx.position));
  R dp = RealOps<R>::sqrt(variance(ctx.momentum));
  return {dq, dp, dq * dp};
}

template <class R>
struct FourierClass {
  // || F phi - phi ||, || F phi + phi ||, || F phi - i phi ||, || F phi + i phi ||
  R norms[4];
  std::optional<int> cls;  // c with F phi = (-i)^c phi, when one matches
};

template <class R>
FourierClass<R> fourier_eigenclass(const CanonContext<R>& ctx, const StateVec<R>& phi,
                                   R threshold = R(1e-6)) {
  require_same_grid(ctx.grid, phi.grid, "fourier_eigenclass");
  require_unit(phi, "fourier_eigenclass");
  StateVec<R> fphi = apply(ctx.fourier, phi);
  auto dist = [&](Cx<R> factor) {
    R acc(0);
    for (size_t i = 0; i < fphi.amp.size(); ++i) acc += cx_norm2(fphi.amp[i] - factor * phi.amp[i]);
    return RealOps<R>::sqrt(acc);
  };
  FourierClass<R> out{{dist(Cx<R>(R(1))), dist(Cx<R>(R(-1))), dist(Cx<R>(R(0), R(1))),
                       dist(Cx<R>(R(0), R(-1)))},
                      std::nullopt};
  // (-i)^c for c = 0..3 maps to norms index 0, 3, 1, 2
  const int idx_of_class[4] = {0, 3, 1, 2};
  for (int c = 0; c < 4; ++c) {
    if (out.norms[idx_of_class[c]] < threshold) {
      out.cls = c;
      break;
    }
  }
  return out;
}

// Moduli of the coordinates of g_kappa in the commutator eigenbasis
// (modulus-ascending order). The basis is passed in so several kappa can
// share one diagonalization.
template <class R>
std::vector<R> gaussian_coordinates(const Spectral<R>& basis, const StateVec<R>& gk) {
  std::vector<R> out;
  out.reserve(basis.vectors.size());
  for (const auto& phi : basis.vectors) out.push_back(cx_abs(inner(phi, gk)));
  return out;
}

template <class R>
std::vector<R> gaussian_coordinates(Grid g, R kappa) {
  Spectral<R> basis = commutator_eigenbasis<R>(g);
  return gaussian_coordinates(basis, discrete_gaussian<R>(g, kappa));
}

template <class R>
struct CanonReport {
  R residual;
  R expectation_defect;
  R delta_q;
  R delta_p;
  R uncertainty_product;
  std::map<double, bool> in_S;
};

template <class R>
CanonReport<R> canon_report(const CanonContext<R>& ctx, const StateVec<R>& psi,
                            const std::vector<double>& epsilons = {0.1, 0.01, 0.001}) {
  CanonReport<R> rep;
  rep.residual = residual_norm(ctx, psi);
  rep.expectation_defect = expectation_defect(ctx, psi);
  auto up = uncertainty_product(ctx, psi);
  rep.delta_q = up.delta_q;
  rep.delta_p = up.delta_p;
  rep.uncertainty_product = up.product;
  for (double e : epsilons) rep.in_S[e] = to_dbl(rep.residual) < e;
  return rep;
}

}  // namespace qudit
