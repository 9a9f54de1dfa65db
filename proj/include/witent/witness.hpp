#pragma once

// Witness operators with the data needed to re-check them.

#include <witent/herm.hpp>
#include <witent/parallel.hpp>
#include <witent/rng.hpp>
#include <witent/states.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

enum class WitnessClass {
  DecomposableBipartite,  // P + Q^{T_cut}
  DecomposableMulti,      // P + sum_c Q_c^{T_c}
  Dps2Certified,          // nonnegative on states with a 2-copy PPT symmetric extension
  SsrDiagonal,            // nonnegative diagonal, W <= I
  Operator,               // plain operator, no certificate attached
};

enum class TraceNorm { None, TraceEqualsD, OpLeqI };

inline const char* to_string(WitnessClass c) {
  switch (c) {
    case WitnessClass::DecomposableBipartite: return "decomposable_bipartite";
    case WitnessClass::DecomposableMulti: return "decomposable_multi";
    case WitnessClass::Dps2Certified: return "dps2_certified";
    case WitnessClass::SsrDiagonal: return "ssr_diagonal";
    case WitnessClass::Operator: return "operator";
  }
  return "operator";
}
inline WitnessClass witness_class_from_string(const std::string& s) {
  for (auto c : {WitnessClass::DecomposableBipartite, WitnessClass::DecomposableMulti, WitnessClass::Dps2Certified,
                 WitnessClass::SsrDiagonal, WitnessClass::Operator})
    if (s == to_string(c)) return c;
  throw std::invalid_argument("unknown witness class '" + s + "'");
}

inline const char* to_string(TraceNorm t) {
  switch (t) {
    case TraceNorm::None: return "none";
    case TraceNorm::TraceEqualsD: return "trace_equals_d";
    case TraceNorm::OpLeqI: return "op_leq_i";
  }
  return "none";
}
inline TraceNorm trace_norm_from_string(const std::string& s) {
  for (auto t : {TraceNorm::None, TraceNorm::TraceEqualsD, TraceNorm::OpLeqI})
    if (s == to_string(t)) return t;
  throw std::invalid_argument("unknown trace normalization '" + s + "'");
}

struct Witness {
  HermitianMatrix op;
  WitnessClass cls = WitnessClass::Operator;
  double n = kUnbounded;  // -n I <= op
  double m = kUnbounded;  // op <= m I
  TraceNorm trace_norm = TraceNorm::None;
  // Decomposable parts: op = P + sum_c Q[c]^{T_cuts[c]}.
  std::optional<HermitianMatrix> P;
  std::vector<HermitianMatrix> Q;
  std::vector<Cut> cuts;

  bool decomposable() const {
    return cls == WitnessClass::DecomposableBipartite || cls == WitnessClass::DecomposableMulti;
  }
};

// Decomposable witness assembled from its parts.
inline Witness make_decomposable(const HermitianMatrix& p, std::vector<HermitianMatrix> q, std::vector<Cut> cuts,
                                 double n = kUnbounded, double m = kUnbounded) {
  if (q.size() != cuts.size()) throw std::invalid_argument("make_decomposable: one Q per cut");
  if (!p.has_shape()) throw std::invalid_argument("make_decomposable: P needs a shape");
  HermitianMatrix op = p;
  for (std::size_t c = 0; c < q.size(); ++c) op += partial_transpose(q[c].with_shape(p.shape()), cuts[c]);
  Witness w;
  w.op = op;
  w.cls = cuts.size() == 1 ? WitnessClass::DecomposableBipartite : WitnessClass::DecomposableMulti;
  w.n = n;
  w.m = m;
  w.P = p;
  for (auto& x : q) w.Q.push_back(x.with_shape(p.shape()));
  w.cuts = std::move(cuts);
  return w;
}

// Tr(W rho)
inline double evaluate(const Witness& w, const DensityMatrix& rho) {
  if (w.op.dim() != rho.dim())
    throw std::invalid_argument("evaluate: witness dimension " + std::to_string(w.op.dim()) +
                                " does not match state dimension " + std::to_string(rho.dim()));
  return hs_inner(w.op, rho.op());
}

struct ValidationReport {
  bool valid = false;
  double reconstruction_error = 0.0;  // max |op - P - sum Q^T| entrywise
  double min_eig_p = 0.0;
  std::vector<double> min_eig_q;
  double upper_violation = 0.0;  // max(0, lambda_max(op) - m)
  double lower_violation = 0.0;  // max(0, -n - lambda_min(op))
  double worst = 0.0;
  std::string worst_item;
};

inline ValidationReport validate_decomposable(const Witness& w, double tol = 1e-8) {
  ValidationReport r;
  auto note = [&](double v, const std::string& what) {
    if (v > r.worst) {
      r.worst = v;
      r.worst_item = what;
    }
  };
  if (!w.decomposable() || !w.P || w.Q.size() != w.cuts.size()) {
    r.worst = kUnbounded;
    r.worst_item = "witness carries no decomposable parts";
    return r;
  }
  const auto shape = w.op.shape();
  CMatrix rebuilt = w.P->mat();
  for (std::size_t c = 0; c < w.Q.size(); ++c) rebuilt += partial_transpose(w.Q[c].mat(), shape, w.cuts[c]);
  r.reconstruction_error = (rebuilt - w.op.mat()).cwiseAbs().maxCoeff();
  note(r.reconstruction_error, "reconstruction");
  r.min_eig_p = lambda_min(*w.P);
  note(-r.min_eig_p, "P");
  for (std::size_t c = 0; c < w.Q.size(); ++c) {
    r.min_eig_q.push_back(lambda_min(w.Q[c]));
    note(-r.min_eig_q.back(), "Q[" + std::to_string(c) + "]");
  }
  const auto spec = eig_hermitian(w.op).values;
  if (std::isfinite(w.m)) r.upper_violation = std::max(0.0, spec.maxCoeff() - w.m);
  if (std::isfinite(w.n)) r.lower_violation = std::max(0.0, -w.n - spec.minCoeff());
  note(r.upper_violation, "upper bound");
  note(r.lower_violation, "lower bound");
  r.valid = r.worst <= tol;
  return r;
}

namespace detail {

inline CVector random_unit(Eigen::Index d, Rng& rng) {
  CVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

inline CVector kron_all(const std::vector<CVector>& f) {
  CVector v = CVector::Ones(1);
  for (const auto& x : f) {
    CVector next(v.size() * x.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * x.size(), x.size()) = v[i] * x;
    v = std::move(next);
  }
  return v;
}

// <psi|W|psi> for psi the product of the factors.
inline double product_value(const CMatrix& w, const std::vector<CVector>& f) {
  const CVector v = kron_all(f);
  return v.dot(w * v).real();
}

// Projected gradient descent on the product of unit spheres. A step that does
// not lower the value is retried with half the step size.
inline double refine_product(const CMatrix& w, const SystemShape& shape, std::vector<CVector>& f, int iterations,
                             double step) {
  const std::size_t k = f.size();
  double value = product_value(w, f);
  for (int it = 0; it < iterations; ++it) {
    const CVector v = kron_all(f);
    const CVector wv = w * v;
    // g_j = d<psi|W|psi>/d conj(psi_j): contract W psi with the other factors.
    std::vector<CVector> g(k);
    for (std::size_t j = 0; j < k; ++j) g[j] = CVector::Zero(f[j].size());
    for (std::size_t i = 0; i < shape.total_dim(); ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        cplx others = 1.0;
        for (std::size_t l = 0; l < k; ++l)
          if (l != j) others *= std::conj(f[l][static_cast<Eigen::Index>(shape.digit(i, l))]);
        g[j][static_cast<Eigen::Index>(shape.digit(i, j))] += others * wv[static_cast<Eigen::Index>(i)];
      }
    }
    bool moved = false;
    for (double h = step; h > 1e-6; h *= 0.5) {
      std::vector<CVector> trial = f;
      for (std::size_t j = 0; j < k; ++j) {
        const CVector tangent = g[j] - f[j].dot(g[j]) * f[j];
        trial[j] = f[j] - h * tangent;
        trial[j] /= trial[j].norm();
      }
      const double tv = product_value(w, trial);
      if (tv < value) {
        f = std::move(trial);
        value = tv;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return value;
}

}  // namespace detail

struct ProductCheckOptions {
  int refine_count = 1000;
  int refine_iterations = 200;
  double refine_step = 0.1;
  unsigned workers = 1;
};

// Minimum of <prod|W|prod> over Haar-random product vectors, followed by local
// refinement of the lowest candidates. Sample i draws from Rng(seed, i). A
// result below -1e-6 proves W is not an entanglement witness.
inline double mc_product_check(const Witness& w, int samples, std::uint64_t seed,
                               const ProductCheckOptions& opt = {}) {
  if (!w.op.has_shape()) throw std::invalid_argument("mc_product_check: witness needs a shape");
  if (samples < 1) throw std::invalid_argument("mc_product_check: samples must be >= 1");
  const auto shape = w.op.shape();
  const CMatrix& wm = w.op.mat();
  const auto ns = static_cast<std::size_t>(samples);

  std::vector<std::vector<CVector>> factors(ns);
  std::vector<double> values(ns);
  parallel_for(ns, opt.workers, [&](std::size_t i) {
    Rng rng(seed, i);
    factors[i].resize(shape.parties());
    for (std::size_t k = 0; k < shape.parties(); ++k)
      factors[i][k] = detail::random_unit(static_cast<Eigen::Index>(shape[k]), rng);
    values[i] = detail::product_value(wm, factors[i]);
  });

  std::vector<std::size_t> order(ns);
  for (std::size_t i = 0; i < ns; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  const std::size_t nref = std::min<std::size_t>(ns, static_cast<std::size_t>(std::max(0, opt.refine_count)));
  std::vector<double> refined(nref);
  parallel_for(nref, opt.workers, [&](std::size_t r) {
    auto f = factors[order[r]];
    refined[r] = detail::refine_product(wm, shape, f, opt.refine_iterations, opt.refine_step);
  });
  double best = values[order[0]];
  for (double v : refined) best = std::min(best, v);
  return best;
}

}  // namespace witent
