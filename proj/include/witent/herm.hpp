#pragma once

// Dense Hermitian operators on multipartite Hilbert spaces.
//
// Subsystem ordering is row-major throughout: the first subsystem is the
// slowest-varying index of a basis label.

#include <witent/jacobi.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

class SystemShape {
 public:
  SystemShape() = default;
  explicit SystemShape(std::vector<std::size_t> local_dims) : dims_(std::move(local_dims)) {
    for (auto d : dims_)
      if (d == 0) throw std::invalid_argument("SystemShape: local dimension must be >= 1");
  }
  SystemShape(std::initializer_list<std::size_t> local_dims)
      : SystemShape(std::vector<std::size_t>(local_dims)) {}

  const std::vector<std::size_t>& local_dims() const { return dims_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  std::size_t total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>{});
  }

  // Stride of subsystem k inside a flat basis index.
  std::size_t stride(std::size_t k) const {
    std::size_t s = 1;
    for (std::size_t j = k + 1; j < dims_.size(); ++j) s *= dims_[j];
    return s;
  }
  std::size_t digit(std::size_t index, std::size_t k) const {
    return (index / stride(k)) % dims_.at(k);
  }

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

inline SystemShape concat(const SystemShape& a, const SystemShape& b) {
  auto d = a.local_dims();
  d.insert(d.end(), b.local_dims().begin(), b.local_dims().end());
  return SystemShape(std::move(d));
}

// A set of subsystem indices (0-based). Used both as one side of a
// bipartition and as the set of parties kept by a partial trace.
class Cut {
 public:
  Cut() = default;
  Cut(std::initializer_list<std::size_t> parties) : Cut(std::vector<std::size_t>(parties)) {}
  explicit Cut(std::vector<std::size_t> parties) : parties_(std::move(parties)) {
    std::sort(parties_.begin(), parties_.end());
    parties_.erase(std::unique(parties_.begin(), parties_.end()), parties_.end());
    if (parties_.empty()) throw std::invalid_argument("Cut: party set must be nonempty");
  }

  const std::vector<std::size_t>& parties() const { return parties_; }
  bool contains(std::size_t k) const {
    return std::binary_search(parties_.begin(), parties_.end(), k);
  }

  void check_range(const SystemShape& shape) const {
    for (auto k : parties_)
      if (k >= shape.parties())
        throw std::out_of_range("Cut: subsystem index " + std::to_string(k) +
                                " out of range for " + std::to_string(shape.parties()) +
                                " parties");
  }
  // Bipartitions must leave at least one party on the other side.
  void check_bipartition(const SystemShape& shape) const {
    check_range(shape);
    if (parties_.size() >= shape.parties())
      throw std::invalid_argument("Cut: bipartition needs a nonempty complement");
  }

  Cut complement(const SystemShape& shape) const {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < shape.parties(); ++k)
      if (!contains(k)) rest.push_back(k);
    return Cut(std::move(rest));
  }

  // Dimensions of the two sides.
  std::size_t side_dim(const SystemShape& shape) const {
    std::size_t d = 1;
    for (auto k : parties_) d *= shape[k];
    return d;
  }

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<std::size_t> parties_;
};

class HermitianMatrix {
 public:
  static constexpr double kAsymmetryTolerance = 1e-9;

  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, std::optional<SystemShape> shape = std::nullopt)
      : shape_(std::move(shape)) {
    if (m.rows() != m.cols()) throw std::invalid_argument("HermitianMatrix: matrix not square");
    if (m.rows() == 0) throw std::invalid_argument("HermitianMatrix: empty matrix");
    if (shape_ && shape_->total_dim() != static_cast<std::size_t>(m.rows()))
      throw std::invalid_argument("HermitianMatrix: shape total_dim " +
                                  std::to_string(shape_->total_dim()) +
                                  " does not match matrix dimension " +
                                  std::to_string(m.rows()));
    const double asym = ((m - m.adjoint()) * 0.5).cwiseAbs().maxCoeff();
    if (asym > kAsymmetryTolerance)
      throw std::invalid_argument("HermitianMatrix: asymmetric part " + std::to_string(asym) +
                                  " exceeds tolerance");
    m_ = (m + m.adjoint()) * 0.5;
  }
  static HermitianMatrix from_real(const RMatrix& m, std::optional<SystemShape> shape = std::nullopt) {
    return HermitianMatrix(CMatrix(m.cast<cplx>()), std::move(shape));
  }

  static HermitianMatrix identity(const SystemShape& shape) {
    const auto n = static_cast<Eigen::Index>(shape.total_dim());
    return HermitianMatrix(CMatrix::Identity(n, n), shape);
  }
  static HermitianMatrix zero(const SystemShape& shape) {
    const auto n = static_cast<Eigen::Index>(shape.total_dim());
    return HermitianMatrix(CMatrix::Zero(n, n), shape);
  }
  // |v><v| (not normalized).
  static HermitianMatrix projector(const CVector& v, std::optional<SystemShape> shape = std::nullopt) {
    return HermitianMatrix(CMatrix(v * v.adjoint()), std::move(shape));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& mat() const { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  bool has_shape() const { return shape_.has_value(); }
  // Falls back to a single subsystem of full dimension.
  SystemShape shape() const {
    return shape_ ? *shape_ : SystemShape({static_cast<std::size_t>(m_.rows())});
  }
  const std::optional<SystemShape>& shape_opt() const { return shape_; }
  HermitianMatrix with_shape(SystemShape shape) const { return HermitianMatrix(m_, std::move(shape)); }

  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ += o.m_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ -= o.m_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }
  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  HermitianMatrix operator-() const { return HermitianMatrix(*this) *= -1.0; }

 private:
  void check_same_dim(const HermitianMatrix& o) const {
    if (o.dim() != dim())
      throw std::invalid_argument("HermitianMatrix: dimension mismatch " + std::to_string(dim()) +
                                  " vs " + std::to_string(o.dim()));
  }

  CMatrix m_;
  std::optional<SystemShape> shape_;
};

struct HermitianEigen {
  RVector values;   // descending
  CMatrix vectors;  // orthonormal columns
};

namespace detail {

// Splits every flat index into the part carried by `parties` and the rest.
struct IndexSplit {
  std::vector<std::size_t> inside;   // sum of digit*stride over parties in the set
  std::vector<std::size_t> outside;  // remainder
};

inline IndexSplit split_indices(const SystemShape& shape, const Cut& cut) {
  const std::size_t n = shape.total_dim();
  IndexSplit s{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t in = 0;
    for (auto k : cut.parties()) in += shape.digit(i, k) * shape.stride(k);
    s.inside[i] = in;
    s.outside[i] = i - in;
  }
  return s;
}

// Flat index within the subsystems listed in `parties` (in that order).
inline std::vector<std::size_t> sub_index(const SystemShape& shape,
                                          const std::vector<std::size_t>& parties) {
  const std::size_t n = shape.total_dim();
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (auto k : parties) idx = idx * shape[k] + shape.digit(i, k);
    out[i] = idx;
  }
  return out;
}

}  // namespace detail

inline CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

inline HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.mat(), b.mat()), concat(a.shape(), b.shape()));
}

inline HermitianMatrix partial_trace(const HermitianMatrix& m, const Cut& keep) {
  if (!m.has_shape()) throw std::invalid_argument("partial_trace: matrix has no subsystem shape");
  const SystemShape shape = m.shape();
  keep.check_range(shape);
  std::vector<std::size_t> kept_dims;
  for (auto k : keep.parties()) kept_dims.push_back(shape[k]);
  const Cut traced_parties = keep.parties().size() == shape.parties()
                                 ? keep
                                 : keep.complement(shape);
  const auto kept_idx = detail::sub_index(shape, keep.parties());
  const auto traced_idx = keep.parties().size() == shape.parties()
                              ? std::vector<std::size_t>(shape.total_dim(), 0)
                              : detail::sub_index(shape, traced_parties.parties());
  SystemShape out_shape(kept_dims);
  const auto nk = static_cast<Eigen::Index>(out_shape.total_dim());
  CMatrix out = CMatrix::Zero(nk, nk);
  const std::size_t n = shape.total_dim();
  const CMatrix& x = m.mat();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (traced_idx[i] == traced_idx[j])
        out(static_cast<Eigen::Index>(kept_idx[i]), static_cast<Eigen::Index>(kept_idx[j])) +=
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return HermitianMatrix(out, out_shape);
}

// Raw partial transpose; also used on non-Hermitian intermediates.
inline CMatrix partial_transpose(const CMatrix& x, const SystemShape& shape, const Cut& cut) {
  cut.check_range(shape);
  if (static_cast<std::size_t>(x.rows()) != shape.total_dim())
    throw std::invalid_argument("partial_transpose: shape does not match matrix");
  const auto split = detail::split_indices(shape, cut);
  const std::size_t n = shape.total_dim();
  CMatrix out(x.rows(), x.cols());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(split.outside[i] + split.inside[j]),
          static_cast<Eigen::Index>(split.outside[j] + split.inside[i])) =
          x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

inline HermitianMatrix partial_transpose(const HermitianMatrix& m, const Cut& cut) {
  if (!m.has_shape()) throw std::invalid_argument("partial_transpose: matrix has no subsystem shape");
  return HermitianMatrix(partial_transpose(m.mat(), m.shape(), cut), m.shape());
}

// Reorders subsystems so that new subsystem k is old subsystem order[k].
inline CMatrix permute_subsystems(const CMatrix& x, const SystemShape& shape,
                                  const std::vector<std::size_t>& order) {
  if (order.size() != shape.parties())
    throw std::invalid_argument("permute_subsystems: order has wrong length");
  const auto new_index = detail::sub_index(shape, order);
  const std::size_t n = shape.total_dim();
  CMatrix out(x.rows(), x.cols());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(new_index[i]), static_cast<Eigen::Index>(new_index[j])) =
          x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

inline HermitianEigen eig_hermitian(const HermitianMatrix& m) {
  auto e = jacobi_eigen<cplx>(m.mat());
  return {std::move(e.values), std::move(e.vectors)};
}

inline double lambda_min(const HermitianMatrix& m) { return eig_hermitian(m).values.minCoeff(); }
inline double lambda_max(const HermitianMatrix& m) { return eig_hermitian(m).values.maxCoeff(); }

inline double trace_norm(const HermitianMatrix& m) {
  return eig_hermitian(m).values.cwiseAbs().sum();
}

// Tr(a b); real for Hermitian arguments.
inline double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("hs_inner: dimension mismatch " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
  // Tr(ab) = sum_ij a_ij b_ji = sum_ij a_ij conj(b_ij)
  return (a.mat().array() * b.mat().conjugate().array()).sum().real();
}

// Rebuilds V f(Λ) V† from an eigendecomposition.
template <typename F>
CMatrix spectral_apply(const HermitianEigen& e, F&& f) {
  RVector fv(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k) fv[k] = f(e.values[k]);
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

}  // namespace witent
