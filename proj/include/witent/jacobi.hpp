#pragma once

// Cyclic Jacobi eigensolver for dense real-symmetric and complex-Hermitian
// matrices. Each rotation first removes the phase of the pivot element, which
// reduces the 2x2 subproblem to the real symmetric case.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct SymmetricEigen {
  Eigen::VectorXd values;  // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns
};

namespace detail {

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }
inline double conj(double x) { return x; }
inline std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }

}  // namespace detail

template <typename Scalar>
SymmetricEigen<Scalar> jacobi_eigen(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, int max_sweeps = 100) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigen: matrix not square");
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);

  const double scale = a.norm();
  const double eps = std::numeric_limits<double>::epsilon();
  auto off_norm2 = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
    return 2.0 * s;
  };

  int sweep = 0;
  if (scale > 0.0) {
    for (;; ++sweep) {
      const double off = off_norm2();
      if (off <= (1e-14 * scale) * (1e-14 * scale)) break;
      if (sweep >= max_sweeps)
        throw ConvergenceError("jacobi_eigen: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps");
      for (Eigen::Index q = 1; q < n; ++q) {
        for (Eigen::Index p = 0; p < q; ++p) {
          const Scalar apq = a(p, q);
          const double mag = std::abs(apq);
          if (mag == 0.0) continue;
          const double app = detail::real_part(a(p, p));
          const double aqq = detail::real_part(a(q, q));
          // Skip negligible pivots once the matrix is nearly diagonal.
          if (sweep > 3 && mag < eps * 1e-2 * (std::abs(app) + std::abs(aqq))) {
            a(p, q) = Scalar(0);
            a(q, p) = Scalar(0);
            continue;
          }
          const Scalar phase_c = detail::conj(Scalar(apq / mag));
          const double theta = (aqq - app) / (2.0 * mag);
          double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          // U restricted to (p,q): [[c, s], [-s*conj(phase), c*conj(phase)]]
          const Scalar upp = Scalar(c), upq = Scalar(s);
          const Scalar uqp = -s * phase_c, uqq = c * phase_c;

          Scalar* colp = a.col(p).data();
          Scalar* colq = a.col(q).data();
          for (Eigen::Index k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const Scalar akp = colp[k], akq = colq[k];
            const Scalar np = akp * upp + akq * uqp;
            const Scalar nq = akp * upq + akq * uqq;
            colp[k] = np;
            colq[k] = nq;
            a(p, k) = detail::conj(np);
            a(q, k) = detail::conj(nq);
          }
          a(p, p) = Scalar(app - t * mag);
          a(q, q) = Scalar(aqq + t * mag);
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);

          Scalar* vp = v.col(p).data();
          Scalar* vq = v.col(q).data();
          for (Eigen::Index k = 0; k < n; ++k) {
            const Scalar vkp = vp[k], vkq = vq[k];
            vp[k] = vkp * upp + vkq * uqp;
            vq[k] = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return detail::real_part(a(i, i)) > detail::real_part(a(j, j));
  });
  SymmetricEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = detail::real_part(a(order[k], order[k]));
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace witent
