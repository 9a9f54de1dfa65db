#pragma once

// Linear matrix inequalities over Hermitian blocks, lowered onto the real
// symmetric SDP form through H -> [[Re H, -Im H], [Im H, Re H]].
//
// The unknowns are real parameters y_k. Each block is
//   F(y) = F_0 + sum_k y_k F_k  psd,
// and the objective is max sum_k c_k y_k. In SDP terms C = embed(F_0) and
// A_k = -embed(F_k), so the SDP dual vector is y itself.

#include <witent/herm.hpp>
#include <witent/sdp.hpp>

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace witent {

inline RMatrix embed_hermitian(const CMatrix& h) {
  const auto n = h.rows();
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return out;
}
inline RMatrix embed_hermitian(const HermitianMatrix& h) { return embed_hermitian(h.mat()); }

// Hermitian H with <embed(K), X> = Tr(K H) for every Hermitian K. Maps psd X to psd H.
inline CMatrix multiplier_from_embedded(const RMatrix& x) {
  const auto n = x.rows() / 2;
  const RMatrix re = x.topLeftCorner(n, n) + x.bottomRightCorner(n, n);
  const RMatrix im = x.bottomLeftCorner(n, n) - x.topRightCorner(n, n);
  CMatrix h(n, n);
  h.real() = 0.5 * (re + re.transpose());
  h.imag() = 0.5 * (im - im.transpose());
  return h;
}

// Inverse of embed_hermitian on matrices of embedded form.
inline CMatrix hermitian_from_embedded(const RMatrix& z) { return 0.5 * multiplier_from_embedded(z); }

// A Hermitian unknown of dimension n, expanded over n^2 (or n^2 - 1 when
// traceless) real parameters starting at `offset`.
struct HermitianVar {
  int offset = 0;
  int dim = 0;
  bool traceless = false;

  int count() const { return dim * dim - (traceless ? 1 : 0); }

  // Basis element for parameter k (0-based within this variable): the E_jj
  // first, then E_jl + E_lj and i(E_jl - E_lj) for j < l. The traceless
  // variant replaces E_jj by E_jj - E_{n-1,n-1} for j < n-1.
  CMatrix basis(int k) const {
    const int n = dim;
    CMatrix e = CMatrix::Zero(n, n);
    const int diag = traceless ? n - 1 : n;
    if (k < diag) {
      e(k, k) = 1.0;
      if (traceless) e(n - 1, n - 1) = -1.0;
      return e;
    }
    int r = k - diag;
    for (int j = 0; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        if (r == 0) {
          e(j, l) = e(l, j) = 1.0;
          return e;
        }
        if (r == 1) {
          e(j, l) = cplx(0.0, 1.0);
          e(l, j) = cplx(0.0, -1.0);
          return e;
        }
        r -= 2;
      }
    throw std::out_of_range("HermitianVar: basis index out of range");
  }

  CMatrix value(const RVector& y) const {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (int k = 0; k < count(); ++k) out += y[offset + k] * basis(k);
    return out;
  }
};

class LmiProblem {
 public:
  int add_scalars(int count) {
    const int first = nparams_;
    nparams_ += count;
    objective_.conservativeResize(nparams_);
    objective_.tail(count).setZero();
    return first;
  }

  HermitianVar add_hermitian(int dim, bool traceless = false) {
    if (dim < 1) throw std::invalid_argument("LmiProblem: hermitian variable needs dim >= 1");
    HermitianVar v{nparams_, dim, traceless};
    add_scalars(v.count());
    return v;
  }

  int params() const { return nparams_; }

  // Hermitian block F_0 + ... psd.
  int add_block(const CMatrix& constant) {
    if (constant.rows() != constant.cols()) throw std::invalid_argument("LmiProblem: block not square");
    blocks_.push_back({constant, {}, false});
    return static_cast<int>(blocks_.size()) - 1;
  }
  // Real 1x1 block c_0 + ... >= 0.
  int add_scalar_block(double constant) {
    CMatrix c(1, 1);
    c(0, 0) = constant;
    blocks_.push_back({c, {}, true});
    return static_cast<int>(blocks_.size()) - 1;
  }

  int block_dim(int block) const { return static_cast<int>(blocks_.at(static_cast<std::size_t>(block)).constant.rows()); }

  void add_term(int block, int param, const CMatrix& coeff) {
    auto& b = blocks_.at(static_cast<std::size_t>(block));
    if (param < 0 || param >= nparams_) throw std::out_of_range("LmiProblem: parameter index");
    if (coeff.rows() != b.constant.rows() || coeff.cols() != b.constant.cols())
      throw std::invalid_argument("LmiProblem: coefficient has wrong size");
    auto [it, inserted] = b.terms.try_emplace(param, coeff);
    if (!inserted) it->second += coeff;
  }

  // Adds scale * f(v) to the block, for a linear map f.
  void add_map(int block, const HermitianVar& v, const std::function<CMatrix(const CMatrix&)>& f,
               double scale = 1.0) {
    for (int k = 0; k < v.count(); ++k) add_term(block, v.offset + k, scale * f(v.basis(k)));
  }
  void add_var(int block, const HermitianVar& v, double scale = 1.0) {
    add_map(block, v, [](const CMatrix& m) { return m; }, scale);
  }

  void set_objective(int param, double c) { objective_[param] = c; }
  void add_objective(int param, double c) { objective_[param] += c; }
  // Objective term Tr(K v).
  void add_objective(const HermitianVar& v, const CMatrix& k, double scale = 1.0) {
    for (int j = 0; j < v.count(); ++j)
      objective_[v.offset + j] += scale * (k.cwiseProduct(v.basis(j).transpose())).sum().real();
  }

  SdpProblem lower(double drop_tol = 1e-15) const {
    SdpProblem p;
    p.b = objective_;
    p.A.assign(static_cast<std::size_t>(nparams_), {});
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const auto& blk = blocks_[bi];
      RMatrix c = blk.scalar ? RMatrix::Constant(1, 1, blk.constant(0, 0).real()) : embed_hermitian(blk.constant);
      p.block_dims.push_back(static_cast<int>(c.rows()));
      p.C.push_back(std::move(c));
      for (const auto& [param, coeff] : blk.terms) {
        RMatrix a = blk.scalar ? RMatrix::Constant(1, 1, -coeff(0, 0).real()) : RMatrix(-embed_hermitian(coeff));
        SparseBlock sb{static_cast<int>(bi), {}};
        for (int col = 0; col < a.cols(); ++col)
          for (int row = 0; row <= col; ++row)
            if (std::abs(a(row, col)) > drop_tol) sb.entries.push_back({row, col, a(row, col)});
        if (!sb.entries.empty()) p.A[static_cast<std::size_t>(param)].push_back(std::move(sb));
      }
    }
    return p;
  }

  // Hermitian multiplier of a block at the SDP solution.
  CMatrix multiplier(const SdpSolution& s, int block) const {
    const auto& x = s.X.at(static_cast<std::size_t>(block));
    if (blocks_.at(static_cast<std::size_t>(block)).scalar) return x.cast<cplx>();
    return multiplier_from_embedded(x);
  }
  // Value of F(y) for a block at the SDP solution, taken from the slack.
  CMatrix slack(const SdpSolution& s, int block) const {
    const auto& z = s.Z.at(static_cast<std::size_t>(block));
    if (blocks_.at(static_cast<std::size_t>(block)).scalar) return z.cast<cplx>();
    return hermitian_from_embedded(z);
  }
  // F(y) evaluated from the parameters.
  CMatrix block_value(const RVector& y, int block) const {
    const auto& blk = blocks_.at(static_cast<std::size_t>(block));
    CMatrix out = blk.constant;
    for (const auto& [param, coeff] : blk.terms) out += y[param] * coeff;
    return out;
  }

 private:
  struct Block {
    CMatrix constant;
    std::map<int, CMatrix> terms;
    bool scalar;
  };
  int nparams_ = 0;
  RVector objective_;
  std::vector<Block> blocks_;
};

}  // namespace witent
