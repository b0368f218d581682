#include "qudit/eig_general.hpp"

#include <Eigen/Dense>

namespace qudit {

Spectral<double> eig_general(const OpMat<double>& m) {
  const int d = m.dim();
  Eigen::MatrixXcd em(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) em(i, j) = m.at_storage(i, j);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_general: Schur iteration failed", solver.getMaxIterations());
  }

  Spectral<double> out;
  out.ordering = EigOrder::value_ascending;  // re-ordered below
  out.values.reserve(static_cast<size_t>(d));
  out.vectors.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    out.values.push_back(solver.eigenvalues()(k));
    StateVec<double> v(m.grid);
    for (int i = 0; i < d; ++i) v.amp[static_cast<size_t>(i)] = solver.eigenvectors()(i, k);
    v = normalized(std::move(v));
    phase_fix(v);
    out.vectors.push_back(std::move(v));
  }
  return by_modulus(std::move(out));
}

}  // namespace qudit
