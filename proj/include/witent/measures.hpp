#pragma once

// Witness-based entanglement measures: closed forms and SDP formulations.

#include <witent/herm.hpp>
#include <witent/lmi.hpp>
#include <witent/sdp.hpp>
#include <witent/states.hpp>
#include <witent/witness.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

// rho + s*pi1 = (1 + s - t)*sigma + t*pi2 with sigma PPT across every cut.
struct MixingCertificate {
  double s;
  double t;
  DensityMatrix sigma;
  DensityMatrix pi1;
  DensityMatrix pi2;
};

struct CertificateCheck {
  double identity_residual;  // max entrywise |rho + s pi1 - (1+s-t) sigma - t pi2|
  double ppt_violation;      // max over cuts of max(0, -lambda_min(sigma^T_c))
};

inline CertificateCheck check_certificate(const MixingCertificate& c, const DensityMatrix& rho,
                                          const std::vector<Cut>& cuts) {
  const CMatrix lhs = rho.mat() + c.s * c.pi1.mat();
  const CMatrix rhs = (1.0 + c.s - c.t) * c.sigma.mat() + c.t * c.pi2.mat();
  CertificateCheck out{(lhs - rhs).cwiseAbs().maxCoeff(), 0.0};
  for (const auto& cut : cuts)
    out.ppt_violation = std::max(out.ppt_violation, -lambda_min(partial_transpose(c.sigma.op(), cut)));
  return out;
}

struct MeasureResult {
  double value = 0.0;
  double tolerance = 0.0;
  std::optional<Witness> witness;
  std::optional<MixingCertificate> certificate;
  int solver_iterations = 0;
};

struct MeasureOptions {
  SdpOptions sdp = [] {
    SdpOptions o;
    o.gap_tol = 1e-9;
    o.feas_tol = 1e-9;
    o.acceptable_tol = 1e-7;
    return o;
  }();
  double tolerance = 1e-6;
};

namespace detail {

inline void require_bipartite(const DensityMatrix& rho, const Cut& cut) {
  cut.check_bipartition(rho.shape());
}

inline SdpSolution solve_or_throw(const LmiProblem& lp, const MeasureOptions& opt, const char* what) {
  auto sol = solve(lp.lower(), opt.sdp);
  if (sol.status != SdpStatus::Optimal)
    throw SolverError(std::string(what) + ": SDP solver stopped with status " + to_string(sol.status));
  return sol;
}

// Hermitian multiplier normalized to a state; falls back to I/D when its trace vanishes.
inline DensityMatrix normalized_state(const CMatrix& m, const SystemShape& shape, double trace) {
  if (trace <= 1e-12) return maximally_mixed(shape);
  // Clip tiny negative eigenvalues left by the interior-point iterate.
  const auto e = eig_hermitian(HermitianMatrix(m, shape));
  RVector vals = e.values.cwiseMax(0.0);
  CMatrix psd = e.vectors * vals.asDiagonal() * e.vectors.adjoint();
  return DensityMatrix::from_unnormalized(HermitianMatrix(psd, shape));
}

inline CMatrix pt(const CMatrix& m, const SystemShape& shape, const Cut& cut) {
  return partial_transpose(m, shape, cut);
}

}  // namespace detail

// Sum of |negative eigenvalues| of rho^{T_cut}. The witness is the partial
// transpose of the projector onto the negative eigenspace.
inline MeasureResult negativity(const DensityMatrix& rho, const Cut& cut) {
  detail::require_bipartite(rho, cut);
  const auto shape = rho.shape();
  const auto e = eig_hermitian(partial_transpose(rho.op(), cut));
  double neg = 0.0;
  CMatrix proj = CMatrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index k = 0; k < e.values.size(); ++k)
    if (e.values[k] < -1e-10) {
      neg -= e.values[k];
      proj += e.vectors.col(k) * e.vectors.col(k).adjoint();
    }
  MeasureResult r;
  r.value = neg;
  r.tolerance = 1e-10;
  r.witness = make_decomposable(HermitianMatrix::zero(shape), {HermitianMatrix(proj, shape)}, {cut});
  return r;
}

// N / lambda_max(P^{T_cut}) with P the negative-eigenspace projector of rho^{T_cut}.
inline MeasureResult rg_ppt_closed(const DensityMatrix& rho, const Cut& cut) {
  auto r = negativity(rho, cut);
  if (r.value == 0.0) {
    r.witness->m = 1.0;
    return r;
  }
  const double lmax = lambda_max(r.witness->op);
  const auto shape = rho.shape();
  r.value /= lmax;
  r.witness = make_decomposable(HermitianMatrix::zero(shape), {r.witness->Q[0] * (1.0 / lmax)}, {cut},
                                kUnbounded, 1.0);
  r.witness->trace_norm = TraceNorm::OpLeqI;
  return r;
}

// max{0, -min Tr(W rho)} over W = P + sum_c Q_c^{T_c}, P, Q_c psd, -nI <= W <= mI.
inline MeasureResult e_nm_ppt(const DensityMatrix& rho, const std::vector<Cut>& cuts, double n, double m,
                              const MeasureOptions& opt = {}) {
  if (cuts.empty()) throw std::invalid_argument("e_nm_ppt: at least one cut required");
  if (std::isinf(n) && std::isinf(m)) throw std::invalid_argument("e_nm_ppt: n and m cannot both be infinite");
  if (n < 0.0 || m < 0.0) throw std::invalid_argument("e_nm_ppt: n and m must be nonnegative");
  const auto shape = rho.shape();
  for (const auto& c : cuts) c.check_bipartition(shape);
  const int dim = static_cast<int>(rho.dim());
  const CMatrix id = CMatrix::Identity(dim, dim);

  LmiProblem lp;
  const auto w = lp.add_hermitian(dim);
  std::vector<HermitianVar> q;
  std::vector<int> q_blocks;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    q.push_back(lp.add_hermitian(dim));
    q_blocks.push_back(lp.add_block(CMatrix::Zero(dim, dim)));
    lp.add_var(q_blocks.back(), q.back());
  }
  const int p_block = lp.add_block(CMatrix::Zero(dim, dim));
  lp.add_var(p_block, w);
  for (std::size_t c = 0; c < cuts.size(); ++c)
    lp.add_map(p_block, q[c], [&](const CMatrix& x) { return detail::pt(x, shape, cuts[c]); }, -1.0);
  int m_block = -1, n_block = -1;
  if (std::isfinite(m)) {
    m_block = lp.add_block(m * id);
    lp.add_var(m_block, w, -1.0);
  }
  if (std::isfinite(n)) {
    n_block = lp.add_block(n * id);
    lp.add_var(n_block, w, 1.0);
  }
  lp.add_objective(w, rho.mat(), -1.0);

  const auto sol = detail::solve_or_throw(lp, opt, "e_nm_ppt");

  MeasureResult r;
  r.solver_iterations = sol.iterations;
  r.tolerance = opt.tolerance;
  r.value = std::max(0.0, sol.dobj);

  std::vector<HermitianMatrix> qs;
  for (const auto& v : q) qs.emplace_back(v.value(sol.y), shape);
  HermitianMatrix p(lp.block_value(sol.y, p_block), shape);
  r.witness = make_decomposable(p, qs, cuts, n, m);

  // Multipliers: rho + L_m = L_P + L_n and L_P^{T_c} = L_Qc.
  const CMatrix lam_p = lp.multiplier(sol, p_block);
  const CMatrix lam_m = m_block >= 0 ? lp.multiplier(sol, m_block) : CMatrix::Zero(dim, dim);
  const CMatrix lam_n = n_block >= 0 ? lp.multiplier(sol, n_block) : CMatrix::Zero(dim, dim);
  MixingCertificate cert{lam_m.trace().real(), lam_n.trace().real(),
                         detail::normalized_state(lam_p, shape, lam_p.trace().real()),
                         detail::normalized_state(lam_m, shape, lam_m.trace().real()),
                         detail::normalized_state(lam_n, shape, lam_n.trace().real())};
  if (m_block < 0) cert.s = 0.0;
  if (n_block < 0) cert.t = 0.0;
  r.certificate = cert;
  return r;
}

inline MeasureResult e_nm_ppt(const DensityMatrix& rho, const Cut& cut, double n, double m,
                              const MeasureOptions& opt = {}) {
  return e_nm_ppt(rho, std::vector<Cut>{cut}, n, m, opt);
}

// m*s + n*t for a certificate, with infinite bounds contributing nothing.
inline double certificate_value(const MixingCertificate& c, double n, double m) {
  return (std::isfinite(m) ? m * c.s : 0.0) + (std::isfinite(n) ? n * c.t : 0.0);
}

// Decomposable witnesses normalized by Tr W = D.
inline MeasureResult rr_ppt(const DensityMatrix& rho, const Cut& cut, const MeasureOptions& opt = {}) {
  detail::require_bipartite(rho, cut);
  const auto shape = rho.shape();
  const int dim = static_cast<int>(rho.dim());
  const CMatrix id = CMatrix::Identity(dim, dim);

  // W = I + T with T traceless.
  LmiProblem lp;
  const auto t = lp.add_hermitian(dim, true);
  const auto q = lp.add_hermitian(dim);
  const int q_block = lp.add_block(CMatrix::Zero(dim, dim));
  lp.add_var(q_block, q);
  const int p_block = lp.add_block(id);
  lp.add_var(p_block, t);
  lp.add_map(p_block, q, [&](const CMatrix& x) { return detail::pt(x, shape, cut); }, -1.0);
  lp.add_objective(t, rho.mat(), -1.0);

  const auto sol = detail::solve_or_throw(lp, opt, "rr_ppt");
  MeasureResult r;
  r.solver_iterations = sol.iterations;
  r.tolerance = opt.tolerance;
  const double value = sol.dobj - 1.0;  // -Tr((I + T) rho)
  r.value = std::max(0.0, value);
  HermitianMatrix p(lp.block_value(sol.y, p_block), shape);
  r.witness = make_decomposable(p, {HermitianMatrix(q.value(sol.y), shape)}, {cut});
  r.witness->trace_norm = TraceNorm::TraceEqualsD;
  return r;
}

namespace detail {

inline void check_schmidt(const std::vector<double>& c) {
  if (c.empty()) throw std::invalid_argument("schmidt list is empty");
  double sq = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0.0) throw std::invalid_argument("schmidt coefficients must be nonnegative");
    if (i > 0 && c[i] > c[i - 1] + 1e-12) throw std::invalid_argument("schmidt coefficients must be descending");
    sq += c[i] * c[i];
  }
  if (std::abs(sq - 1.0) > 1e-10) throw std::invalid_argument("schmidt coefficients must have unit 2-norm");
}

}  // namespace detail

// (sum c)^2 - 1
inline double pure_rg(const std::vector<double>& c) {
  detail::check_schmidt(c);
  double s = 0.0;
  for (double x : c) s += x;
  return s * s - 1.0;
}

// c1 * c2
inline double pure_rr(const std::vector<double>& c) {
  detail::check_schmidt(c);
  return c.size() < 2 ? 0.0 : c[0] * c[1];
}

// Closed form for isotropic states with W <= I and W >= -nI.
inline double isotropic_e_n1(int d, double p, double n) {
  if (d < 2) throw std::invalid_argument("isotropic_e_n1: d must be >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("isotropic_e_n1: p outside [0,1]");
  if (n < 0.0) throw std::invalid_argument("isotropic_e_n1: n must be >= 0");
  const double dd = d;
  const double v = n <= dd - 1.0 ? (n + 1.0) * p + (1.0 - p) * (n + 1.0) / (dd * dd) - 1.0
                                 : dd * p + (1.0 - p) / dd - 1.0;
  return std::max(0.0, v);
}

// max Tr(D rho) over 0 <= D <= I, -I/d <= D^{T_cut} <= I/d, d the smaller side.
inline double rains_fidelity(const DensityMatrix& rho, const Cut& cut, const MeasureOptions& opt = {}) {
  detail::require_bipartite(rho, cut);
  const auto shape = rho.shape();
  const double d = static_cast<double>(std::min(cut.side_dim(shape), cut.complement(shape).side_dim(shape)));
  const int dim = static_cast<int>(rho.dim());
  const CMatrix id = CMatrix::Identity(dim, dim);
  LmiProblem lp;
  const auto dv = lp.add_hermitian(dim);
  lp.add_var(lp.add_block(CMatrix::Zero(dim, dim)), dv);
  lp.add_var(lp.add_block(id), dv, -1.0);
  auto ptm = [&](const CMatrix& x) { return detail::pt(x, shape, cut); };
  lp.add_map(lp.add_block(id / d), dv, ptm, -1.0);
  lp.add_map(lp.add_block(id / d), dv, ptm, 1.0);
  lp.add_objective(dv, rho.mat(), 1.0);
  return detail::solve_or_throw(lp, opt, "rains_fidelity").dobj;
}

// Wootters: max{0, l1 - l2 - l3 - l4}, l_i the descending square roots of the
// eigenvalues of rho (sy x sy) rho^* (sy x sy).
inline double concurrence_2q(const DensityMatrix& rho) {
  if (!(rho.shape() == SystemShape{2, 2})) throw std::invalid_argument("concurrence_2q: state must be 2x2");
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const CMatrix tilde = yy * rho.mat().conjugate() * yy;
  // sqrt(rho) tilde sqrt(rho) is Hermitian with the same spectrum.
  const auto e = eig_hermitian(rho.op());
  const RVector sq = e.values.cwiseMax(0.0).cwiseSqrt();
  const CMatrix root = e.vectors * sq.asDiagonal() * e.vectors.adjoint();
  CMatrix r = root * tilde * root;
  r = 0.5 * (r + r.adjoint());
  const auto lam = jacobi_eigen<cplx>(r).values;
  double l[4];
  // roundoff of order 1e-16 in a zero eigenvalue would otherwise surface as 1e-8
  for (int i = 0; i < 4; ++i) l[i] = lam[i] > 1e-13 ? std::sqrt(lam[i]) : 0.0;
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

// Particle-number superselection: max{0, -min Tr(G rho)} over G <= I with G_ii >= 0.
inline MeasureResult ssr_nonlocality(const DensityMatrix& rho, const MeasureOptions& opt = {}) {
  const int dim = static_cast<int>(rho.dim());
  LmiProblem lp;
  const auto g = lp.add_hermitian(dim);
  lp.add_var(lp.add_block(CMatrix::Identity(dim, dim)), g, -1.0);
  for (int i = 0; i < dim; ++i) {
    const int b = lp.add_scalar_block(0.0);
    CMatrix one(1, 1);
    one(0, 0) = 1.0;
    lp.add_term(b, g.offset + i, one);  // basis element i is E_ii
  }
  lp.add_objective(g, rho.mat(), -1.0);
  const auto sol = detail::solve_or_throw(lp, opt, "ssr_nonlocality");
  MeasureResult r;
  r.solver_iterations = sol.iterations;
  r.tolerance = opt.tolerance;
  r.value = std::max(0.0, sol.dobj);
  Witness w;
  w.op = HermitianMatrix(g.value(sol.y), rho.shape());
  w.cls = WitnessClass::SsrDiagonal;
  w.m = 1.0;
  w.trace_norm = TraceNorm::OpLeqI;
  r.witness = w;
  return r;
}

namespace detail {

// Isometry from B-symmetric-square into B (x) B: columns |ii> and (|ij> + |ji>)/sqrt2.
inline CMatrix sym2_isometry(int db) {
  const int s = db * (db + 1) / 2;
  CMatrix v = CMatrix::Zero(db * db, s);
  int col = 0;
  for (int i = 0; i < db; ++i) v(i * db + i, col++) = 1.0;
  for (int i = 0; i < db; ++i)
    for (int j = i + 1; j < db; ++j) {
      v(i * db + j, col) = v(j * db + i, col) = 1.0 / std::sqrt(2.0);
      ++col;
    }
  return v;
}

}  // namespace detail

// Lower bound on the generalized robustness from witnesses W <= I that are
// nonnegative on every state with a PPT symmetric extension to two copies of
// the complement of `cut`.
inline MeasureResult rg_dps2(const DensityMatrix& rho, const Cut& cut, const MeasureOptions& opt = {}) {
  detail::require_bipartite(rho, cut);
  const auto shape = rho.shape();
  const Cut rest = cut.complement(shape);
  const int da = static_cast<int>(cut.side_dim(shape));
  const int db = static_cast<int>(rest.side_dim(shape));
  if (da * db * db > 64)
    throw std::invalid_argument("rg_dps2: extension dimension " + std::to_string(da * db * db) +
                                " exceeds the supported cap of 64");

  // Reorder to (cut side) x (complement).
  std::vector<std::size_t> order = cut.parties();
  order.insert(order.end(), rest.parties().begin(), rest.parties().end());
  const CMatrix rho_ab = permute_subsystems(rho.mat(), shape, order);

  const int s = db * (db + 1) / 2;
  const int ydim = da * s;
  const CMatrix vs = detail::sym2_isometry(db);
  const CMatrix v = kron(CMatrix::Identity(da, da), vs);
  const SystemShape y_shape{static_cast<std::size_t>(da), static_cast<std::size_t>(s)};
  const SystemShape ext_shape{static_cast<std::size_t>(da), static_cast<std::size_t>(db),
                              static_cast<std::size_t>(db)};
  const int dab = da * db;

  LmiProblem lp;
  const auto y = lp.add_hermitian(ydim);
  lp.add_var(lp.add_block(CMatrix::Zero(ydim, ydim)), y);
  lp.add_map(lp.add_block(CMatrix::Zero(ydim, ydim)), y,
             [&](const CMatrix& x) { return partial_transpose(x, y_shape, Cut{0}); });
  lp.add_map(lp.add_block(CMatrix::Zero(da * db * db, da * db * db)), y,
             [&](const CMatrix& x) { return partial_transpose(CMatrix(v * x * v.adjoint()), ext_shape, Cut{2}); });
  const int last = lp.add_block(-rho_ab);
  lp.add_map(last, y, [&](const CMatrix& x) {
    return partial_trace(HermitianMatrix(CMatrix(v * x * v.adjoint()), ext_shape), Cut{0, 1}).mat();
  });
  lp.add_objective(y, CMatrix::Identity(ydim, ydim), -1.0);

  const auto sol = detail::solve_or_throw(lp, opt, "rg_dps2");
  MeasureResult r;
  r.solver_iterations = sol.iterations;
  r.tolerance = opt.tolerance;
  r.value = std::max(0.0, -sol.dobj - 1.0);

  // W = I - Lambda in the (cut, complement) ordering, mapped back.
  CMatrix w_ab = CMatrix::Identity(dab, dab) - lp.multiplier(sol, last);
  std::vector<std::size_t> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = k;
  SystemShape permuted_shape = [&] {
    std::vector<std::size_t> dims;
    for (auto k : order) dims.push_back(shape[k]);
    return SystemShape(dims);
  }();
  Witness w;
  w.op = HermitianMatrix(permute_subsystems(w_ab, permuted_shape, inverse), shape);
  w.cls = WitnessClass::Dps2Certified;
  w.m = 1.0;
  w.trace_norm = TraceNorm::OpLeqI;
  w.cuts = {cut};
  r.witness = w;
  return r;
}

}  // namespace witent
