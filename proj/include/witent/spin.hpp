#pragma once

// Heisenberg XXX chains, H = J sum_<ij> s_i.s_j + B sum_i sz_i with Pauli
// operators, their thermal states and the nearest-neighbour witness
// W = (N I + sum_<ij> s_i.s_j) / 2N. Units: k = g^2 mu_B^2 = 1.
//
// A two-site chain always has a single bond, periodic or not.

#include <witent/herm.hpp>
#include <witent/jacobi.hpp>
#include <witent/states.hpp>
#include <witent/witness.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace witent {

inline constexpr int kMaxChainSites = 8;

struct ChainSpec {
  int N = 2;
  double J = 1.0;
  double B = 0.0;
  bool periodic = false;
  double beta = 0.0;

  void validate() const {
    if (N < 2 || N > kMaxChainSites)
      throw std::invalid_argument("ChainSpec: N must lie in [2, " + std::to_string(kMaxChainSites) + "]");
    if (!(beta >= 0.0)) throw std::invalid_argument("ChainSpec: beta must be >= 0");
  }
};

inline std::vector<std::pair<int, int>> chain_bonds(int n, bool periodic) {
  std::vector<std::pair<int, int>> b;
  for (int i = 0; i + 1 < n; ++i) b.emplace_back(i, i + 1);
  if (periodic && n > 2) b.emplace_back(n - 1, 0);
  return b;
}

namespace detail {

// Real matrices of sum_<ij> s_i.s_j and sum_i sz_i. The s^y s^y term is real
// because the two factors of i cancel.
inline RMatrix bond_sum(int n, const std::vector<std::pair<int, int>>& bonds) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  RMatrix h = RMatrix::Zero(dim, dim);
  auto bit = [n](Eigen::Index s, int site) { return (s >> (n - 1 - site)) & 1; };
  for (Eigen::Index s = 0; s < dim; ++s)
    for (auto [i, j] : bonds) {
      const bool same = bit(s, i) == bit(s, j);
      h(s, s) += same ? 1.0 : -1.0;  // zz
      if (!same) {
        // xx + yy flips both spins with amplitude 2 on anti-aligned pairs.
        const Eigen::Index t = s ^ (Eigen::Index{1} << (n - 1 - i)) ^ (Eigen::Index{1} << (n - 1 - j));
        h(t, s) += 2.0;
      }
    }
  return h;
}

inline RVector magnetization_diag(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  RVector m(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    int up = 0;
    for (int k = 0; k < n; ++k) up += ((s >> k) & 1) == 0 ? 1 : 0;
    m[s] = 2.0 * up - n;  // |0> is sz = +1
  }
  return m;
}

inline SystemShape qubits(int n) { return SystemShape(std::vector<std::size_t>(static_cast<std::size_t>(n), 2)); }

}  // namespace detail

inline HermitianMatrix xxx_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  RMatrix h = spec.J * detail::bond_sum(spec.N, chain_bonds(spec.N, spec.periodic));
  h.diagonal() += spec.B * detail::magnetization_diag(spec.N);
  return HermitianMatrix::from_real(h, detail::qubits(spec.N));
}

inline Witness toth_witness(int n, bool periodic) {
  if (n < 2 || n > kMaxChainSites)
    throw std::invalid_argument("toth_witness: N must lie in [2, " + std::to_string(kMaxChainSites) + "]");
  RMatrix w = detail::bond_sum(n, chain_bonds(n, periodic));
  w.diagonal().array() += n;
  w /= 2.0 * n;
  Witness out;
  out.op = HermitianMatrix::from_real(w, detail::qubits(n));
  out.cls = WitnessClass::Operator;
  out.m = 1.0;
  out.trace_norm = TraceNorm::OpLeqI;
  return out;
}

struct ThermalPoint {
  double beta;
  double U;         // <H>
  double M;         // <sum sz>
  double M2;        // <(sum sz)^2>
  double bond_sum;  // <sum_<ij> s_i.s_j>
  double witness;   // Tr(W rho)
};

// Exact diagonalization of one chain, reused across temperatures. Thermal
// averages only need the diagonal of each observable in the energy basis.
class XxxChain {
 public:
  explicit XxxChain(ChainSpec spec) : spec_(spec) {
    spec_.validate();
    const auto bonds = chain_bonds(spec_.N, spec_.periodic);
    const RMatrix bs = detail::bond_sum(spec_.N, bonds);
    const RVector mz = detail::magnetization_diag(spec_.N);
    RMatrix h = spec_.J * bs;
    h.diagonal() += spec_.B * mz;
    const auto e = jacobi_eigen<double>(h);
    energies_ = e.values;
    const RMatrix& v = e.vectors;
    bond_diag_ = (v.transpose() * bs * v).diagonal();
    m_diag_ = (v.transpose() * mz.asDiagonal() * v).diagonal();
    m2_diag_ = (v.transpose() * mz.array().square().matrix().asDiagonal() * v).diagonal();
  }

  const ChainSpec& spec() const { return spec_; }
  const RVector& energies() const { return energies_; }

  ThermalPoint at(double beta) const {
    if (!(beta >= 0.0)) throw std::invalid_argument("XxxChain: beta must be >= 0");
    const double e0 = energies_.minCoeff();
    RVector w = (-beta * (energies_.array() - e0)).exp();
    w /= w.sum();
    ThermalPoint p;
    p.beta = beta;
    p.U = w.dot(energies_);
    p.M = w.dot(m_diag_);
    p.M2 = w.dot(m2_diag_);
    p.bond_sum = w.dot(bond_diag_);
    p.witness = (spec_.N + p.bond_sum) / (2.0 * spec_.N);
    return p;
  }

 private:
  ChainSpec spec_;
  RVector energies_, bond_diag_, m_diag_, m2_diag_;
};

// max{0, -Tr(W rho_beta)}
inline double rg_witness_lower_thermal(const ChainSpec& spec) {
  return std::max(0.0, -XxxChain(spec).at(spec.beta).witness);
}

struct ThermoEstimate {
  double estimate;  // -(U - BM)/(2NJ) - 1/2, equal to -Tr(W rho)
  double printed;   // (U - BM)/(2NJ) - 1/2, the opposite sign convention
  double U;
  double M;
};

inline ThermoEstimate thermo_estimate(const XxxChain& chain, double beta) {
  const auto& s = chain.spec();
  if (s.J == 0.0) throw std::invalid_argument("thermo_estimate: J must be nonzero");
  const auto p = chain.at(beta);
  const double x = (p.U - s.B * p.M) / (2.0 * s.N * s.J);
  return {-x - 0.5, x - 0.5, p.U, p.M};
}
inline ThermoEstimate thermo_estimate(const ChainSpec& spec) { return thermo_estimate(XxxChain(spec), spec.beta); }

struct Susceptibility {
  double chi_exact;         // beta (<M^2> - <M>^2)
  double chi_witness_form;  // beta (N + (1/3) sum_<ij> <s_i.s_j>)
};

inline Susceptibility susceptibility(const XxxChain& chain, double beta) {
  const auto& s = chain.spec();
  if (s.B != 0.0) throw std::invalid_argument("susceptibility: requires B = 0");
  if (!(beta > 0.0)) throw std::invalid_argument("susceptibility: requires beta > 0");
  const auto p = chain.at(beta);
  return {beta * (p.M2 - p.M * p.M), beta * (s.N + p.bond_sum / 3.0)};
}
inline Susceptibility susceptibility(const ChainSpec& spec) { return susceptibility(XxxChain(spec), spec.beta); }

}  // namespace witent
