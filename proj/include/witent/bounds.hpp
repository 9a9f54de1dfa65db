#pragma once

// Operational bounds computed from measure values. Logs are base 2.

#include <witent/measures.hpp>
#include <witent/witness.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace witent {

enum class BoundQuantity { TeleportDistanceMin, DistillableUpper, EofLower };

inline const char* to_string(BoundQuantity q) {
  switch (q) {
    case BoundQuantity::TeleportDistanceMin: return "teleport_distance_min";
    case BoundQuantity::DistillableUpper: return "distillable_upper";
    case BoundQuantity::EofLower: return "eof_lower";
  }
  return "unknown";
}

struct BoundReport {
  BoundQuantity quantity;
  double value;
  std::string formula;
  std::map<std::string, double> inputs;
  bool degenerate = false;  // the bound is vacuous for these inputs
};

// Upper bound on the minimal teleportation distance from E^PPT_{n:1}, n >= d.
inline BoundReport teleport_dmin_upper(double e_ppt_n1, int d, double n) {
  if (d < 2) throw std::invalid_argument("teleport_dmin_upper: d must be >= 2");
  if (n < d) throw std::invalid_argument("teleport_dmin_upper: requires n >= d");
  if (e_ppt_n1 < 0.0) throw std::invalid_argument("teleport_dmin_upper: measure value must be >= 0");
  const double dd = d;
  const double v = std::max(0.0, 2.0 * dd / (dd + 1.0) * (1.0 - (1.0 + e_ppt_n1) / dd));
  return {BoundQuantity::TeleportDistanceMin, v, "2d/(d+1) * (1 - (1+E)/d)",
          {{"E_ppt_n1", e_ppt_n1}, {"d", dd}, {"n", n}}};
}

// log2(1 + E_{n:1})
inline double le_n1(double e_value) {
  if (e_value < 0.0) throw std::invalid_argument("le_n1: value must be >= 0");
  return std::log2(1.0 + e_value);
}

inline BoundReport distillable_upper(const DensityMatrix& rho, const Cut& cut, double n,
                                     const MeasureOptions& opt = {}) {
  if (!(n >= 1.0)) throw std::invalid_argument("distillable_upper: requires n >= 1");
  const double e = e_nm_ppt(rho, cut, n, 1.0, opt).value;
  return {BoundQuantity::DistillableUpper, le_n1(e), "log2(1 + E^PPT_{n:1})", {{"E_ppt_n1", e}, {"n", n}}};
}

inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

// E_F >= H((1 + sqrt(1 - 4 R^2)) / 2) for a lower bound R on the random
// robustness normalized to Tr W = 1.
inline BoundReport eof_lower_rr(double rr_value) {
  if (!(rr_value >= 0.0 && rr_value <= 0.5 + 1e-12))
    throw std::invalid_argument("eof_lower_rr: value outside [0, 1/2]");
  const double r = std::min(rr_value, 0.5);
  const double v = binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * r * r))) / 2.0);
  return {BoundQuantity::EofLower, v, "H((1 + sqrt(1 - 4R^2))/2)", {{"R_r", rr_value}}};
}

// E_F >= (log2 d - 1)/d * R_G; vacuous at d = 2.
inline BoundReport eof_lower_rg(double rg_value, int d) {
  if (d < 2) throw std::invalid_argument("eof_lower_rg: d must be >= 2");
  if (rg_value < 0.0) throw std::invalid_argument("eof_lower_rg: value must be >= 0");
  const double dd = d;
  BoundReport r{BoundQuantity::EofLower, (std::log2(dd) - 1.0) / dd * rg_value, "(log2 d - 1)/d * R_G",
                {{"R_G", rg_value}, {"d", dd}}};
  r.degenerate = d == 2;
  return r;
}

// Entanglement of formation of the isotropic state with fidelity F, d >= 3,
// F in [4(d-1)/d^2, 1].
inline double isotropic_eof_exact(int d, double f) {
  if (d < 3) throw std::invalid_argument("isotropic_eof_exact: d must be >= 3");
  const double dd = d;
  const double lo = 4.0 * (dd - 1.0) / (dd * dd);
  if (f < lo - 1e-12 || f > 1.0 + 1e-12)
    throw std::invalid_argument("isotropic_eof_exact: F outside [4(d-1)/d^2, 1]");
  return dd * std::log2(dd - 1.0) / (dd - 2.0) * (f - 1.0) + std::log2(dd);
}

// Random-robustness lower bound from any witness: -Tr(W rho)/Tr(W), clipped to [0, 1/2].
inline double rescaled_witness_rr(const Witness& w, const DensityMatrix& rho) {
  const double tr = w.op.trace();
  if (!(tr > 0.0)) throw std::invalid_argument("rescaled_witness_rr: witness trace must be positive");
  return std::clamp(-evaluate(w, rho) / tr, 0.0, 0.5);
}

}  // namespace witent
