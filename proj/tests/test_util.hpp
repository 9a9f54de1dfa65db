#pragma once

#include <witent/witent.hpp>

#include <Eigen/Eigenvalues>

namespace witent::testing {

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Swap operator on d (x) d built entry by entry.
inline CMatrix swap_operator(Eigen::Index d) {
  CMatrix v = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

inline CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return 0.5 * (g + g.adjoint());
}

// Reference spectrum from Eigen's own solver, ascending.
inline Eigen::VectorXd oracle_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double oracle_lambda_min(const CMatrix& m) { return oracle_eigenvalues(m).minCoeff(); }

inline double oracle_negativity(const DensityMatrix& rho, const Cut& cut) {
  const auto ev = oracle_eigenvalues(partial_transpose(rho.mat(), rho.shape(), cut));
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0) s -= ev[i];
  return s;
}

}  // namespace witent::testing
