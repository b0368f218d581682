#pragma once

#include <vector>

#include "qudit/grid.hpp"
#include "qudit/scalar.hpp"

namespace qudit {

// Complex amplitude function on the symmetric grid.
template <class R>
struct StateVec {
  Grid grid;
  std::vector<Cx<R>> amp;

  StateVec() = default;
  explicit StateVec(Grid g) : grid(g), amp(static_cast<size_t>(g.d)) {}

  Cx<R>& at(int n) { return amp[static_cast<size_t>(grid.storage(n))]; }
  const Cx<R>& at(int n) const { return amp[static_cast<size_t>(grid.storage(n))]; }

  int dim() const { return grid.d; }
};

template <class R>
StateVec<R> delta_state(Grid g, int m) {
  if (!g.in_range(m)) throw DomainError("delta_state: index out of range");
  StateVec<R> v(g);
  v.at(m) = Cx<R>(1);
  return v;
}

// <phi|psi> = sum conj(phi(n)) psi(n), conjugate-linear in the first slot.
template <class R>
Cx<R> inner(const StateVec<R>& phi, const StateVec<R>& psi) {
  require_same_grid(phi.grid, psi.grid, "inner");
  Cx<R> acc(0);
  for (size_t i = 0; i < phi.amp.size(); ++i) acc += std::conj(phi.amp[i]) * psi.amp[i];
  return acc;
}

template <class R>
R norm(const StateVec<R>& psi) {
  R acc(0);
  for (const auto& z : psi.amp) acc += cx_norm2(z);
  return RealOps<R>::sqrt(acc);
}

template <class R>
StateVec<R> normalized(StateVec<R> psi) {
  R n = norm(psi);
  if (!(n > R(0))) throw DomainError("normalized: zero vector");
  R inv = R(1) / n;
  for (auto& z : psi.amp) z *= inv;
  return psi;
}

template <class R>
bool is_unit(const StateVec<R>& psi, R tol) {
  return RealOps<R>::abs(norm(psi) - R(1)) <= tol;
}

// precision conversion
template <class RTo, class RFrom>
StateVec<RTo> cast_state(const StateVec<RFrom>& src) {
  StateVec<RTo> dst(src.grid);
  for (size_t i = 0; i < src.amp.size(); ++i) {
    dst.amp[i] = Cx<RTo>(static_cast<RTo>(src.amp[i].real()), static_cast<RTo>(src.amp[i].imag()));
  }
  return dst;
}

}  // namespace qudit
