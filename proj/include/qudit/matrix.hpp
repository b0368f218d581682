#pragma once

#include <string>
#include <vector>

#include "qudit/state.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qudit {

enum class Structure { general, hermitian, anti_hermitian, unitary };

inline const char* structure_name(Structure s) {
  switch (s) {
    case Structure::hermitian: return "hermitian";
    case Structure::anti_hermitian: return "anti-hermitian";
    case Structure::unitary: return "unitary";
    default: return "general";
  }
}

enum class Exec { serial, parallel };

// Dense complex d x d matrix in the delta basis, row/column indexed by
// logical indices. Row-major storage.
template <class R>
struct OpMat {
  Grid grid;
  Structure tag = Structure::general;
  std::vector<Cx<R>> a;

  OpMat() = default;
  explicit OpMat(Grid g) : grid(g), a(static_cast<size_t>(g.d) * g.d) {}

  Cx<R>& at(int n, int m) {
    return a[static_cast<size_t>(grid.storage(n)) * grid.d + grid.storage(m)];
  }
  const Cx<R>& at(int n, int m) const {
    return a[static_cast<size_t>(grid.storage(n)) * grid.d + grid.storage(m)];
  }
  Cx<R>& at_storage(int i, int j) { return a[static_cast<size_t>(i) * grid.d + j]; }
  const Cx<R>& at_storage(int i, int j) const { return a[static_cast<size_t>(i) * grid.d + j]; }

  int dim() const { return grid.d; }
};

template <class R>
OpMat<R> identity_matrix(Grid g) {
  OpMat<R> m(g);
  for (int i = 0; i < g.d; ++i) m.at_storage(i, i) = Cx<R>(1);
  m.tag = Structure::unitary;
  return m;
}

template <class R>
R max_abs(const OpMat<R>& m) {
  R best(0);
  for (const auto& z : m.a) {
    R v = cx_abs(z);
    if (v > best) best = v;
  }
  return best;
}

// ---- kernels ------------------------------------------------------------
// Parallel versions distribute whole output rows/entries across threads;
// each output element is accumulated in a fixed serial order, so serial and
// parallel results are bit-identical.

namespace kernels {

template <class R>
void matmul(const OpMat<R>& x, const OpMat<R>& y, OpMat<R>& out, Exec exec) {
  const int d = x.dim();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Cx<R> acc(0);
      for (int k = 0; k < d; ++k) acc += x.at_storage(i, k) * y.at_storage(k, j);
      out.at_storage(i, j) = acc;
    }
  }
  (void)exec;
}

template <class R>
void matvec(const OpMat<R>& m, const StateVec<R>& v, StateVec<R>& out) {
  const int d = m.dim();
  for (int i = 0; i < d; ++i) {
    Cx<R> acc(0);
    for (int k = 0; k < d; ++k) acc += m.at_storage(i, k) * v.amp[static_cast<size_t>(k)];
    out.amp[static_cast<size_t>(i)] = acc;
  }
}

}  // namespace kernels

// ---- operations ----------------------------------------------------------

template <class R>
StateVec<R> apply(const OpMat<R>& op, const StateVec<R>& psi) {
  require_same_grid(op.grid, psi.grid, "apply");
  StateVec<R> out(psi.grid);
  kernels::matvec(op, psi, out);
  return out;
}

template <class R>
OpMat<R> compose(const OpMat<R>& a, const OpMat<R>& b, Exec exec = Exec::parallel) {
  require_same_grid(a.grid, b.grid, "compose");
  OpMat<R> out(a.grid);
  kernels::matmul(a, b, out, exec);
  return out;
}

template <class R>
OpMat<R> adjoint(const OpMat<R>& m) {
  OpMat<R> out(m.grid);
  const int d = m.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at_storage(i, j) = std::conj(m.at_storage(j, i));
  if (m.tag == Structure::hermitian || m.tag == Structure::unitary) out.tag = m.tag;
  return out;
}

template <class R>
OpMat<R> commutator(const OpMat<R>& a, const OpMat<R>& b, Exec exec = Exec::parallel) {
  require_same_grid(a.grid, b.grid, "commutator");
  OpMat<R> ab = compose(a, b, exec);
  OpMat<R> ba = compose(b, a, exec);
  OpMat<R> out(a.grid);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = ab.a[i] - ba.a[i];
  return out;
}

template <class R>
OpMat<R> scale(OpMat<R> m, Cx<R> c) {
  for (auto& z : m.a) z *= c;
  m.tag = Structure::general;
  return m;
}

template <class R>
OpMat<R> add(const OpMat<R>& a, const OpMat<R>& b) {
  require_same_grid(a.grid, b.grid, "add");
  OpMat<R> out(a.grid);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = a.a[i] + b.a[i];
  return out;
}

template <class R>
OpMat<R> sub(const OpMat<R>& a, const OpMat<R>& b) {
  require_same_grid(a.grid, b.grid, "sub");
  OpMat<R> out(a.grid);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = a.a[i] - b.a[i];
  return out;
}

// Structure verification: max-entry deviation from the claimed structure.
template <class R>
R structure_deviation(const OpMat<R>& m, Structure s) {
  const int d = m.dim();
  R worst(0);
  auto upd = [&worst](R v) {
    if (v > worst) worst = v;
  };
  switch (s) {
    case Structure::hermitian:
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) upd(cx_abs<R>(m.at_storage(i, j) - std::conj(m.at_storage(j, i))));
      break;
    case Structure::anti_hermitian:
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) upd(cx_abs<R>(m.at_storage(i, j) + std::conj(m.at_storage(j, i))));
      break;
    case Structure::unitary: {
      OpMat<R> gram = compose(adjoint(m), m, Exec::serial);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Cx<R> want = (i == j) ? Cx<R>(1) : Cx<R>(0);
          upd(cx_abs<R>(gram.at_storage(i, j) - want));
        }
      break;
    }
    case Structure::general: break;
  }
  return worst;
}

// Attach a structure tag, verifying it to the given max-entry tolerance.
template <class R>
OpMat<R> tagged(OpMat<R> m, Structure s, R tol = R(1e-12)) {
  R dev = structure_deviation(m, s);
  if (dev > tol) {
    throw StructureError(std::string("matrix is not ") + structure_name(s) +
                         " (max deviation " + std::to_string(to_dbl(dev)) + ")");
  }
  m.tag = s;
  return m;
}

template <class RTo, class RFrom>
OpMat<RTo> cast_matrix(const OpMat<RFrom>& src) {
  OpMat<RTo> dst(src.grid);
  dst.tag = src.tag;
  for (size_t i = 0; i < src.a.size(); ++i) {
    dst.a[i] = Cx<RTo>(static_cast<RTo>(src.a[i].real()), static_cast<RTo>(src.a[i].imag()));
  }
  return dst;
}

}  // namespace qudit
