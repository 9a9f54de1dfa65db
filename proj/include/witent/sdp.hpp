#pragma once

// Small dense semidefinite programs.
//
//   primal:  min <C,X>   s.t. <A_i,X> = b_i,  X psd
//   dual:    max b'y     s.t. Z = C - sum_i y_i A_i psd
//
// X, Z and C are block diagonal with real symmetric blocks. Each A_i is kept
// sparse (upper-triangle entries per block). The solver is an infeasible
// primal-dual path-following method using the HKM direction with a Mehrotra
// predictor-corrector.

#include <witent/jacobi.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One stored entry of a symmetric matrix; (row, col) with row <= col stands
// for both (row, col) and (col, row).
struct SymEntry {
  int row;
  int col;
  double value;
};

struct SparseBlock {
  int block;
  std::vector<SymEntry> entries;
};

// A constraint matrix: the nonzero blocks only, each block listed once.
using SparseSym = std::vector<SparseBlock>;

struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<Eigen::MatrixXd> C;
  std::vector<SparseSym> A;
  Eigen::VectorXd b;

  std::size_t constraints() const { return A.size(); }
  int total_dim() const {
    int n = 0;
    for (int d : block_dims) n += d;
    return n;
  }

  // Shapes, symmetry, index ranges and linear independence of the A_i.
  void validate(double independence_tol = 1e-10) const;
};

enum class SdpStatus { Optimal, PrimalInfeasible, DualInfeasible, IterationLimit, NumericalProblem };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::PrimalInfeasible: return "primal_infeasible";
    case SdpStatus::DualInfeasible: return "dual_infeasible";
    case SdpStatus::IterationLimit: return "iteration_limit";
    case SdpStatus::NumericalProblem: return "numerical_problem";
  }
  return "unknown";
}

// Per-iteration record. For any iterate
//   pobj - dobj = xz + y'(A(X) - b) + <C - A'y - Z, X>
// so pobj >= dobj whenever the iterate is feasible.
struct SdpIterate {
  int iteration;
  double pobj;
  double dobj;
  double xz;
  double infeasibility_term;
  double pinf;
  double dinf;
  double alpha_p;
  double alpha_d;
};

struct SdpSolution {
  std::vector<Eigen::MatrixXd> X;
  std::vector<Eigen::MatrixXd> Z;
  Eigen::VectorXd y;
  double pobj = 0.0;
  double dobj = 0.0;
  double gap = 0.0;  // |pobj - dobj|
  double pinf = 0.0;
  double dinf = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::IterationLimit;
  std::vector<SdpIterate> history;
};

struct SdpOptions {
  int max_iterations = 200;
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  double step_fraction = 0.98;
  double divergence_norm = 1e8;
  // On a Cholesky breakdown, an iterate within this gap/feasibility bound is
  // still reported as optimal. 0 disables.
  double acceptable_tol = 0.0;
  bool check_independence = true;
};

namespace sdp_detail {

using Blocks = std::vector<Eigen::MatrixXd>;

inline double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

inline double fro(const Blocks& a) { return std::sqrt(inner(a, a)); }

// <A_i, K>
inline double apply(const SparseSym& ai, const Blocks& k) {
  double s = 0.0;
  for (const auto& blk : ai) {
    const auto& m = k[static_cast<std::size_t>(blk.block)];
    for (const auto& e : blk.entries)
      s += e.row == e.col ? e.value * m(e.row, e.row) : e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return s;
}

inline Eigen::VectorXd apply_all(const std::vector<SparseSym>& a, const Blocks& k) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<Eigen::Index>(i)] = apply(a[i], k);
  return out;
}

// sum_i y_i A_i added into `out`
inline void add_adjoint(const std::vector<SparseSym>& a, const Eigen::VectorXd& y, Blocks& out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double yi = y[static_cast<Eigen::Index>(i)];
    if (yi == 0.0) continue;
    for (const auto& blk : a[i]) {
      auto& m = out[static_cast<std::size_t>(blk.block)];
      for (const auto& e : blk.entries) {
        m(e.row, e.col) += yi * e.value;
        if (e.row != e.col) m(e.col, e.row) += yi * e.value;
      }
    }
  }
}

inline Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with X + alpha*dX psd (infinity when dX keeps X psd for all
// alpha >= 0). X must be positive definite.
inline double max_step(const Eigen::LLT<Eigen::MatrixXd>& xl, const Eigen::MatrixXd& dx) {
  const Eigen::MatrixXd l = xl.matrixL();
  Eigen::MatrixXd t = l.triangularView<Eigen::Lower>().solve(dx);
  t = l.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
  const double lmin = jacobi_eigen<double>(sym(t)).values.minCoeff();
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

struct SchurColumns {
  // Distinct row/col indices touched by one block of A_j, and the compressed
  // dense block restricted to them.
  int block;
  std::vector<int> support;
  Eigen::MatrixXd compressed;
};

inline std::vector<std::vector<SchurColumns>> compress(const SdpProblem& p) {
  std::vector<std::vector<SchurColumns>> out(p.A.size());
  for (std::size_t j = 0; j < p.A.size(); ++j) {
    for (const auto& blk : p.A[j]) {
      SchurColumns sc;
      sc.block = blk.block;
      for (const auto& e : blk.entries) {
        sc.support.push_back(e.row);
        sc.support.push_back(e.col);
      }
      std::sort(sc.support.begin(), sc.support.end());
      sc.support.erase(std::unique(sc.support.begin(), sc.support.end()), sc.support.end());
      const auto s = static_cast<Eigen::Index>(sc.support.size());
      sc.compressed = Eigen::MatrixXd::Zero(s, s);
      auto pos = [&](int idx) {
        return static_cast<Eigen::Index>(
            std::lower_bound(sc.support.begin(), sc.support.end(), idx) - sc.support.begin());
      };
      for (const auto& e : blk.entries) {
        const auto r = pos(e.row), c = pos(e.col);
        sc.compressed(r, c) += e.value;
        if (r != c) sc.compressed(c, r) += e.value;
      }
      out[j].push_back(std::move(sc));
    }
  }
  return out;
}

// M_ij = <A_i, X A_j Z^{-1}>
inline Eigen::MatrixXd schur(const SdpProblem& p, const std::vector<std::vector<SchurColumns>>& cols,
                             const Blocks& x, const Blocks& zinv) {
  const auto m = static_cast<Eigen::Index>(p.A.size());
  Eigen::MatrixXd schur_m = Eigen::MatrixXd::Zero(m, m);
  // Constraint indices touching each block, to skip empty pairings.
  std::vector<std::vector<Eigen::Index>> touching(p.block_dims.size());
  for (Eigen::Index i = 0; i < m; ++i)
    for (const auto& blk : p.A[static_cast<std::size_t>(i)])
      touching[static_cast<std::size_t>(blk.block)].push_back(i);

  for (Eigen::Index j = 0; j < m; ++j) {
    for (const auto& sc : cols[static_cast<std::size_t>(j)]) {
      const auto b = static_cast<std::size_t>(sc.block);
      const auto n = x[b].rows();
      const auto s = static_cast<Eigen::Index>(sc.support.size());
      Eigen::MatrixXd xs(n, s), zs(s, n);
      for (Eigen::Index k = 0; k < s; ++k) {
        xs.col(k) = x[b].col(sc.support[static_cast<std::size_t>(k)]);
        zs.row(k) = zinv[b].row(sc.support[static_cast<std::size_t>(k)]);
      }
      const Eigen::MatrixXd h = (xs * sc.compressed) * zs;
      for (Eigen::Index i : touching[b]) {
        double v = 0.0;
        for (const auto& blk : p.A[static_cast<std::size_t>(i)]) {
          if (blk.block != sc.block) continue;
          for (const auto& e : blk.entries)
            v += e.row == e.col ? e.value * h(e.row, e.row) : e.value * (h(e.row, e.col) + h(e.col, e.row));
        }
        schur_m(i, j) += v;
      }
    }
  }
  return 0.5 * (schur_m + schur_m.transpose());
}

}  // namespace sdp_detail

inline void SdpProblem::validate(double independence_tol) const {
  const auto nb = block_dims.size();
  if (nb == 0) throw std::invalid_argument("SdpProblem: no blocks");
  if (C.size() != nb) throw std::invalid_argument("SdpProblem: C has wrong block count");
  if (static_cast<std::size_t>(b.size()) != A.size())
    throw std::invalid_argument("SdpProblem: b and A disagree in length");
  for (std::size_t k = 0; k < nb; ++k) {
    if (block_dims[k] <= 0) throw std::invalid_argument("SdpProblem: block dimension must be positive");
    if (C[k].rows() != block_dims[k] || C[k].cols() != block_dims[k])
      throw std::invalid_argument("SdpProblem: C block " + std::to_string(k) + " has wrong size");
    if ((C[k] - C[k].transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + C[k].cwiseAbs().maxCoeff()))
      throw std::invalid_argument("SdpProblem: C block " + std::to_string(k) + " not symmetric");
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<bool> seen(nb, false);
    for (const auto& blk : A[i]) {
      if (blk.block < 0 || static_cast<std::size_t>(blk.block) >= nb)
        throw std::invalid_argument("SdpProblem: A_" + std::to_string(i) + " references a missing block");
      if (seen[static_cast<std::size_t>(blk.block)])
        throw std::invalid_argument("SdpProblem: A_" + std::to_string(i) + " lists a block twice");
      seen[static_cast<std::size_t>(blk.block)] = true;
      const int n = block_dims[static_cast<std::size_t>(blk.block)];
      for (const auto& e : blk.entries)
        if (e.row < 0 || e.col < e.row || e.col >= n)
          throw std::invalid_argument("SdpProblem: A_" + std::to_string(i) + " has an entry outside its block");
    }
  }
  if (independence_tol <= 0.0 || A.empty()) return;

  // Gram matrix of the A_i under the trace inner product.
  const auto m = static_cast<Eigen::Index>(A.size());
  std::vector<sdp_detail::Blocks> dense(A.size());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  std::vector<std::vector<Eigen::Index>> touching(nb);
  for (Eigen::Index i = 0; i < m; ++i)
    for (const auto& blk : A[static_cast<std::size_t>(i)])
      touching[static_cast<std::size_t>(blk.block)].push_back(i);
  for (std::size_t k = 0; k < nb; ++k) {
    const int n = block_dims[k];
    for (Eigen::Index i : touching[k]) {
      Eigen::MatrixXd ai = Eigen::MatrixXd::Zero(n, n);
      for (const auto& blk : A[static_cast<std::size_t>(i)])
        if (static_cast<std::size_t>(blk.block) == k)
          for (const auto& e : blk.entries) {
            ai(e.row, e.col) += e.value;
            if (e.row != e.col) ai(e.col, e.row) += e.value;
          }
      for (Eigen::Index j : touching[k]) {
        if (j < i) continue;
        double v = 0.0;
        for (const auto& blk : A[static_cast<std::size_t>(j)])
          if (static_cast<std::size_t>(blk.block) == k)
            for (const auto& e : blk.entries)
              v += e.row == e.col ? e.value * ai(e.row, e.row) : 2.0 * e.value * ai(e.row, e.col);
        gram(i, j) += v;
        if (i != j) gram(j, i) += v;
      }
    }
  }
  const double scale = gram.diagonal().maxCoeff();
  if (!(scale > 0.0)) throw std::invalid_argument("SdpProblem: all constraint matrices vanish");
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram / scale);
  const Eigen::VectorXd d = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success || d.minCoeff() <= independence_tol)
    throw std::invalid_argument("SdpProblem: constraint matrices are linearly dependent");
}

inline SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {}) {
  using namespace sdp_detail;
  p.validate(opt.check_independence ? 1e-10 : 0.0);

  const std::size_t nb = p.block_dims.size();
  const auto m = static_cast<Eigen::Index>(p.A.size());
  const double ntot = p.total_dim();
  const auto cols = compress(p);

  const double norm_b = p.b.size() ? p.b.norm() : 0.0;
  const double norm_c = fro(p.C);
  const double tau = 1.0 + std::max(p.b.size() ? p.b.cwiseAbs().maxCoeff() : 0.0, norm_c);

  Blocks x(nb), z(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    x[k] = tau * Eigen::MatrixXd::Identity(p.block_dims[k], p.block_dims[k]);
    z[k] = x[k];
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  SdpSolution sol;
  auto finish = [&](SdpStatus status, int iter) {
    sol.X = x;
    sol.Z = z;
    sol.y = y;
    sol.pobj = inner(p.C, x);
    sol.dobj = p.b.dot(y);
    sol.gap = std::abs(sol.pobj - sol.dobj);
    sol.iterations = iter;
    sol.status = status;
    return sol;
  };

  double best_pinf = std::numeric_limits<double>::infinity();
  double best_dinf = std::numeric_limits<double>::infinity();
  int pinf_stall = 0, dinf_stall = 0;

  for (int iter = 0;; ++iter) {
    // Residuals.
    const Eigen::VectorXd rp = p.b - apply_all(p.A, x);
    Blocks rd = p.C;
    add_adjoint(p.A, -y, rd);
    for (std::size_t k = 0; k < nb; ++k) rd[k] -= z[k];

    const double pobj = inner(p.C, x);
    const double dobj = p.b.dot(y);
    const double xz = inner(x, z);
    const double pinf = rp.norm() / (1.0 + norm_b);
    const double dinf = fro(rd) / (1.0 + norm_c);
    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.pinf = pinf;
    sol.dinf = dinf;

    SdpIterate rec{iter, pobj, dobj, xz, -y.dot(rp) + inner(rd, x), pinf, dinf, 0.0, 0.0};

    if (relgap <= opt.gap_tol && pinf <= opt.feas_tol && dinf <= opt.feas_tol) {
      sol.history.push_back(rec);
      return finish(SdpStatus::Optimal, iter);
    }
    if (iter >= opt.max_iterations) {
      sol.history.push_back(rec);
      return finish(SdpStatus::IterationLimit, iter);
    }

    // Divergence with stagnating residuals indicates an infeasibility
    // certificate; so does an objective running off while the other side
    // stays feasible.
    pinf_stall = pinf < 0.5 * best_pinf ? 0 : pinf_stall + 1;
    dinf_stall = dinf < 0.5 * best_dinf ? 0 : dinf_stall + 1;
    best_pinf = std::min(best_pinf, pinf);
    best_dinf = std::min(best_dinf, dinf);
    const bool dual_diverged = (y.size() && y.cwiseAbs().maxCoeff() > opt.divergence_norm) || fro(z) > opt.divergence_norm;
    if ((dual_diverged && pinf_stall > 5 && pinf > opt.feas_tol) ||
        (dinf <= opt.feas_tol && dobj > opt.divergence_norm)) {
      sol.history.push_back(rec);
      return finish(SdpStatus::PrimalInfeasible, iter);
    }
    if ((fro(x) > opt.divergence_norm && dinf_stall > 5 && dinf > opt.feas_tol) ||
        (pinf <= opt.feas_tol && -pobj > opt.divergence_norm)) {
      sol.history.push_back(rec);
      return finish(SdpStatus::DualInfeasible, iter);
    }

    Blocks zinv(nb);
    std::vector<Eigen::LLT<Eigen::MatrixXd>> xl(nb), zl(nb);
    bool ok = true;
    for (std::size_t k = 0; k < nb; ++k) {
      xl[k].compute(x[k]);
      zl[k].compute(z[k]);
      if (xl[k].info() != Eigen::Success || zl[k].info() != Eigen::Success) {
        ok = false;
        break;
      }
      zinv[k] = zl[k].solve(Eigen::MatrixXd::Identity(x[k].rows(), x[k].cols()));
      zinv[k] = sym(zinv[k]);
    }
    if (!ok) {
      sol.history.push_back(rec);
      const bool near = relgap <= opt.acceptable_tol && pinf <= opt.acceptable_tol && dinf <= opt.acceptable_tol;
      return finish(near ? SdpStatus::Optimal : SdpStatus::NumericalProblem, iter);
    }

    const Eigen::MatrixXd schur_m = schur(p, cols, x, zinv);
    Eigen::LLT<Eigen::MatrixXd> mllt(schur_m);
    Eigen::LDLT<Eigen::MatrixXd> mldlt;
    const bool use_llt = mllt.info() == Eigen::Success;
    if (!use_llt) mldlt.compute(schur_m);
    auto solve_m = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
      return use_llt ? Eigen::VectorXd(mllt.solve(r)) : Eigen::VectorXd(mldlt.solve(r));
    };

    const double mu = xz / ntot;

    Blocks xrdz(nb);
    for (std::size_t k = 0; k < nb; ++k) xrdz[k] = x[k] * rd[k] * zinv[k];
    const Eigen::VectorXd a_xrdz = apply_all(p.A, xrdz);
    const Eigen::VectorXd a_zinv = apply_all(p.A, zinv);

    // dZ = Rd - A'dy;  dX = sigma*mu*Z^-1 - X - sym((X dZ + extra) Z^-1)
    auto direction = [&](double sigma_mu, const Eigen::VectorXd& rhs, const Blocks* extra, Eigen::VectorXd& dy,
                         Blocks& dx, Blocks& dz) {
      dy = solve_m(rhs);
      dz = rd;
      add_adjoint(p.A, -dy, dz);
      dx.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        Eigen::MatrixXd t = x[k] * dz[k];
        if (extra) t += (*extra)[k];
        dx[k] = sigma_mu * zinv[k] - x[k] - sym(t * zinv[k]);
      }
    };
    auto steps = [&](const Blocks& dx, const Blocks& dz, double& ap, double& ad) {
      double sp = std::numeric_limits<double>::infinity(), sd = sp;
      for (std::size_t k = 0; k < nb; ++k) {
        sp = std::min(sp, max_step(xl[k], dx[k]));
        sd = std::min(sd, max_step(zl[k], dz[k]));
      }
      ap = std::min(1.0, opt.step_fraction * sp);
      ad = std::min(1.0, opt.step_fraction * sd);
    };

    // Predictor.
    Eigen::VectorXd dy;
    Blocks dx, dz;
    direction(0.0, p.b + a_xrdz, nullptr, dy, dx, dz);
    double ap = 0.0, ad = 0.0;
    steps(dx, dz, ap, ad);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      mu_aff += (x[k] + ap * dx[k]).cwiseProduct(z[k] + ad * dz[k]).sum();
    mu_aff /= ntot;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    Blocks cross(nb);
    for (std::size_t k = 0; k < nb; ++k) cross[k] = dx[k] * dz[k];
    Blocks cross_z(nb);
    for (std::size_t k = 0; k < nb; ++k) cross_z[k] = cross[k] * zinv[k];
    const Eigen::VectorXd rhs = p.b - sigma * mu * a_zinv + a_xrdz + apply_all(p.A, cross_z);
    direction(sigma * mu, rhs, &cross, dy, dx, dz);
    steps(dx, dz, ap, ad);

    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + ap * dx[k]);
      z[k] = sym(z[k] + ad * dz[k]);
    }
    y += ad * dy;
    rec.alpha_p = ap;
    rec.alpha_d = ad;
    sol.history.push_back(rec);
  }
}

}  // namespace witent
