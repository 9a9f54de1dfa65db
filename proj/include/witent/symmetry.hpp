#pragma once

// U (x) U* twirl onto span{P+, I} and the two-parameter witness problem it
// leaves for isotropic states.

#include <witent/herm.hpp>
#include <witent/measures.hpp>
#include <witent/states.hpp>
#include <witent/witness.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace witent {

struct TwirlGroup {
  enum class Kind { UUstar } kind = Kind::UUstar;
  int d = 2;
};

// Projection onto a P+ + b I preserving Tr(x) and Tr(x P+).
inline HermitianMatrix twirl_uustar(const HermitianMatrix& x, int d) {
  if (d < 2) throw std::invalid_argument("twirl_uustar: d must be >= 2");
  if (x.dim() != d * d) throw std::invalid_argument("twirl_uustar: dimension must be d^2");
  const SystemShape shape{static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  const auto pplus = HermitianMatrix::projector(max_entangled_vector(static_cast<std::size_t>(d)), shape);
  const double t = x.trace();
  const double f = hs_inner(x, pplus);
  const double dd = static_cast<double>(d) * d;
  const double b = (t - f) / (dd - 1.0);
  const double a = f - b;
  return pplus * a + HermitianMatrix::identity(shape) * b;
}

struct IsotropicWitness {
  double a;  // coefficient of P+
  double b;  // coefficient of I
};

struct SymmetricWitnessResult {
  double value;
  IsotropicWitness witness;
};

// max{0, -min Tr(W rho_p)} over W = a P+ + b I that are nonnegative on
// product states (b >= 0, a/d + b >= 0) with -nI <= W <= mI, solved by
// enumerating the vertices of the (a, b) polygon.
inline SymmetricWitnessResult symmetric_witness_opt_ab(int d, double p, double n, double m) {
  if (d < 2) throw std::invalid_argument("symmetric_witness_opt: d must be >= 2");
  if (std::isinf(n) && std::isinf(m))
    throw std::invalid_argument("symmetric_witness_opt: n and m cannot both be infinite");
  if (n < 0.0 || m < 0.0) throw std::invalid_argument("symmetric_witness_opt: n and m must be >= 0");
  const double dd = d;
  const double f = p + (1.0 - p) / (dd * dd);  // Tr(rho_p P+)

  // Half-planes alpha*a + beta*b <= gamma.
  struct Half {
    double alpha, beta, gamma;
  };
  std::vector<Half> hs{{0.0, -1.0, 0.0}, {-1.0 / dd, -1.0, 0.0}};
  if (std::isfinite(m)) {
    hs.push_back({0.0, 1.0, m});
    hs.push_back({1.0, 1.0, m});
  }
  if (std::isfinite(n)) {
    hs.push_back({0.0, -1.0, n});
    hs.push_back({-1.0, -1.0, n});
  }
  auto feasible = [&](double a, double b) {
    for (const auto& h : hs)
      if (h.alpha * a + h.beta * b > h.gamma + 1e-12 * (1.0 + std::abs(h.gamma))) return false;
    return true;
  };
  SymmetricWitnessResult best{0.0, {0.0, 0.0}};  // W = 0 is always feasible
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const double det = hs[i].alpha * hs[j].beta - hs[j].alpha * hs[i].beta;
      if (std::abs(det) < 1e-14) continue;
      const double a = (hs[i].gamma * hs[j].beta - hs[j].gamma * hs[i].beta) / det;
      const double b = (hs[i].alpha * hs[j].gamma - hs[j].alpha * hs[i].gamma) / det;
      if (!feasible(a, b)) continue;
      const double v = -(a * f + b);
      if (v > best.value) best = {v, {a, b}};
    }
  return best;
}

inline MeasureResult symmetric_witness_opt(int d, double p, double n, double m) {
  const auto r = symmetric_witness_opt_ab(d, p, n, m);
  const SystemShape shape{static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  MeasureResult out;
  out.value = r.value;
  out.tolerance = 1e-12;
  Witness w;
  w.op = HermitianMatrix::projector(max_entangled_vector(static_cast<std::size_t>(d)), shape) * r.witness.a +
         HermitianMatrix::identity(shape) * r.witness.b;
  w.n = n;
  w.m = m;
  out.witness = w;
  return out;
}

}  // namespace witent
