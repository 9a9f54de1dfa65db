#pragma once

// Density matrices, pure states and the state families used by the measures.

#include <witent/herm.hpp>
#include <witent/rng.hpp>

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
    if (std::abs(m_.trace() - 1.0) > kTolerance)
      throw std::invalid_argument("DensityMatrix: trace " + std::to_string(m_.trace()) +
                                  " differs from 1");
    // Cholesky of rho + tol*I exists iff every eigenvalue exceeds -tol.
    const auto n = m_.dim();
    Eigen::LLT<CMatrix> llt(m_.mat() + kTolerance * CMatrix::Identity(n, n));
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("DensityMatrix: matrix has an eigenvalue below -1e-10");
  }
  DensityMatrix(const CMatrix& m, SystemShape shape)
      : DensityMatrix(HermitianMatrix(m, std::move(shape))) {}

  // Normalizes a positive operator to unit trace.
  static DensityMatrix from_unnormalized(const HermitianMatrix& m) {
    const double tr = m.trace();
    if (!(tr > 0.0)) throw std::invalid_argument("DensityMatrix: nonpositive trace");
    return DensityMatrix(m * (1.0 / tr));
  }

  const HermitianMatrix& op() const { return m_; }
  const CMatrix& mat() const { return m_.mat(); }
  SystemShape shape() const { return m_.shape(); }
  Eigen::Index dim() const { return m_.dim(); }

  double purity() const { return m_.mat().cwiseAbs2().sum(); }

 private:
  HermitianMatrix m_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.op(), b.op()));
}

inline DensityMatrix maximally_mixed(const SystemShape& shape) {
  return DensityMatrix(HermitianMatrix::identity(shape) * (1.0 / static_cast<double>(shape.total_dim())));
}

// e*rho + (1-e)*I/D
inline DensityMatrix white_noise_mix(const DensityMatrix& rho, double e) {
  if (e < 0.0 || e > 1.0) throw std::invalid_argument("white_noise_mix: weight outside [0,1]");
  const auto shape = rho.shape();
  return DensityMatrix(rho.op() * e +
                       HermitianMatrix::identity(shape) * ((1.0 - e) / static_cast<double>(shape.total_dim())));
}

class PureState {
 public:
  PureState(CVector amplitudes, SystemShape shape)
      : amp_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (static_cast<std::size_t>(amp_.size()) != shape_.total_dim())
      throw std::invalid_argument("PureState: amplitude count does not match shape");
    if (std::abs(amp_.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("PureState: amplitudes not normalized");
  }
  static PureState normalized(CVector amplitudes, SystemShape shape) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw std::invalid_argument("PureState: zero vector");
    return PureState(amplitudes / n, std::move(shape));
  }

  const CVector& amplitudes() const { return amp_; }
  const SystemShape& shape() const { return shape_; }
  DensityMatrix density() const {
    return DensityMatrix(HermitianMatrix::projector(amp_, shape_));
  }

 private:
  CVector amp_;
  SystemShape shape_;
};

inline PureState product_pure(const std::vector<CVector>& factors) {
  CVector v = CVector::Ones(1);
  std::vector<std::size_t> dims;
  for (const auto& f : factors) {
    CVector next(v.size() * f.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * f.size(), f.size()) = v[i] * f;
    v = std::move(next);
    dims.push_back(static_cast<std::size_t>(f.size()));
  }
  return PureState::normalized(std::move(v), SystemShape(dims));
}

// |Φ+> = Σ|ii>/√d
inline CVector max_entangled_vector(std::size_t d) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i * d + i)] = 1.0 / std::sqrt(double(d));
  return v;
}

inline DensityMatrix max_entangled(std::size_t d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
  return DensityMatrix(HermitianMatrix::projector(max_entangled_vector(d), SystemShape{d, d}));
}

// p P+ + (1-p) I/d²; PSD iff -1/(d²-1) <= p <= 1.
inline DensityMatrix isotropic(std::size_t d, double p) {
  if (d < 2) throw std::invalid_argument("isotropic: d must be >= 2");
  const double d2 = double(d * d);
  if (p > 1.0 + 1e-12 || p < -1.0 / (d2 - 1.0) - 1e-12)
    throw std::invalid_argument("isotropic: p outside the positive range");
  const SystemShape shape{d, d};
  return DensityMatrix(HermitianMatrix::projector(max_entangled_vector(d), shape) * p +
                       HermitianMatrix::identity(shape) * ((1.0 - p) / d2));
}

// Horodecki's 3x3 PPT entangled family, divided by its trace 8a+1.
inline DensityMatrix horodecki_3x3(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("horodecki_3x3: a must lie in (0,1)");
  CMatrix m = CMatrix::Zero(9, 9);
  for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = a;
  for (int i : {0, 4, 8})
    for (int j : {0, 4, 8})
      if (i != j) m(i, j) = a;
  m(6, 6) = m(8, 8) = (1.0 + a) / 2.0;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  return DensityMatrix(HermitianMatrix(m, SystemShape{3, 3}) * (1.0 / (8.0 * a + 1.0)));
}

inline CVector w_vector() {
  CVector v = CVector::Zero(8);
  v[1] = v[2] = v[4] = 1.0 / std::sqrt(3.0);
  return v;
}
inline CVector ghz_vector(std::size_t qubits = 3) {
  CVector v = CVector::Zero(Eigen::Index{1} << qubits);
  v[0] = v[v.size() - 1] = 1.0 / std::numbers::sqrt2;
  return v;
}

// q|W><W| + (1-q)|GHZ><GHZ| on three qubits.
inline DensityMatrix w_ghz_mix(double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("w_ghz_mix: q outside [0,1]");
  const SystemShape shape{2, 2, 2};
  return DensityMatrix(HermitianMatrix::projector(w_vector(), shape) * q +
                       HermitianMatrix::projector(ghz_vector(), shape) * (1.0 - q));
}

// ¼(|00><00| + |11><11|) + ½|Ψ+><Ψ+|: separable, but not locally preparable
// under a particle-number superselection rule.
inline DensityMatrix vc_ssr_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = 0.25;
  m(1, 2) = m(2, 1) = 0.25;
  return DensityMatrix(m, SystemShape{2, 2});
}

// (I - d (P+)^{T_A}) / (d² - d), the normalized projector onto the
// antisymmetric subspace.
inline DensityMatrix antisymmetric_werner(std::size_t d) {
  if (d < 2) throw std::invalid_argument("antisymmetric_werner: d must be >= 2");
  const SystemShape shape{d, d};
  const auto pplus = HermitianMatrix::projector(max_entangled_vector(d), shape);
  return DensityMatrix((HermitianMatrix::identity(shape) - partial_transpose(pplus, Cut{0}) * double(d)) *
                       (1.0 / double(d * d - d)));
}

inline DensityMatrix random_density(const SystemShape& shape, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(shape.total_dim());
  if (n < 2) throw std::invalid_argument("random_density: dimension must be >= 2");
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  CMatrix gg = g * g.adjoint();
  gg /= gg.trace().real();
  return DensityMatrix(HermitianMatrix(gg, shape));
}

// Hilbert-Schmidt sample from stream `stream` of `seed`.
inline DensityMatrix random_density(const SystemShape& shape, std::uint64_t seed, std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  return random_density(shape, rng);
}

inline PureState random_pure(const SystemShape& shape, Rng& rng) {
  CVector v(static_cast<Eigen::Index>(shape.total_dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  return PureState::normalized(std::move(v), shape);
}

// exp(-βh)/Z, evaluated in the eigenbasis of h with the ground energy shifted out.
inline DensityMatrix thermal(const HermitianEigen& spectrum, const SystemShape& shape, double beta) {
  if (beta < 0.0) throw std::invalid_argument("thermal: beta must be >= 0");
  const double e0 = spectrum.values.minCoeff();
  RVector w = (-(beta) * (spectrum.values.array() - e0)).exp();
  w /= w.sum();
  CMatrix rho = spectrum.vectors * w.asDiagonal() * spectrum.vectors.adjoint();
  return DensityMatrix(HermitianMatrix(rho, shape));
}

inline DensityMatrix thermal(const HermitianMatrix& h, double beta) {
  return thermal(eig_hermitian(h), h.shape(), beta);
}

// Schmidt coefficients across the bipartition cut | complement, descending.
inline std::vector<double> schmidt(const PureState& psi, const Cut& cut) {
  const auto& shape = psi.shape();
  cut.check_bipartition(shape);
  const Cut rest = cut.complement(shape);
  const auto row = detail::sub_index(shape, cut.parties());
  const auto col = detail::sub_index(shape, rest.parties());
  const auto da = static_cast<Eigen::Index>(cut.side_dim(shape));
  const auto db = static_cast<Eigen::Index>(rest.side_dim(shape));
  CMatrix m = CMatrix::Zero(da, db);
  for (std::size_t i = 0; i < shape.total_dim(); ++i)
    m(static_cast<Eigen::Index>(row[i]), static_cast<Eigen::Index>(col[i])) =
        psi.amplitudes()[static_cast<Eigen::Index>(i)];
  const auto e = jacobi_eigen<cplx>(CMatrix(m * m.adjoint()));
  std::vector<double> out;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) out.push_back(std::sqrt(std::max(0.0, e.values[k])));
  return out;
}

}  // namespace witent
