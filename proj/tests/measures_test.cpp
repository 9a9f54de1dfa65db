#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace witent;
using namespace witent::testing;

namespace {

const SystemShape kQubits{2, 2};

DensityMatrix product_state(std::uint64_t seed) {
  Rng rng(seed);
  const auto a = random_density(SystemShape{2}, rng), b = random_density(SystemShape{2}, rng);
  return tensor(a, b);
}

std::vector<double> schmidt_of(const PureState& psi) { return schmidt(psi, Cut{0}); }

}  // namespace

TEST(Negativity, KnownValues) {
  EXPECT_NEAR(negativity(max_entangled(2), Cut{0}).value, 0.5, 1e-12);
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.9, 1.0})
    EXPECT_NEAR(negativity(isotropic(2, p), Cut{0}).value, std::max(0.0, (3 * p - 1) / 4), 1e-12) << p;
  for (int k = 1; k <= 9; ++k) EXPECT_EQ(negativity(horodecki_3x3(k / 10.0), Cut{0}).value, 0.0);
}

TEST(Negativity, AgreesWithOracleOnRandomStates) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto rho = random_density(SystemShape{2, 3}, 8, i);
    EXPECT_NEAR(negativity(rho, Cut{0}).value, oracle_negativity(rho, Cut{0}), 1e-10);
    EXPECT_NEAR(negativity(rho, Cut{1}).value, oracle_negativity(rho, Cut{0}), 1e-10);
  }
}

TEST(Negativity, RejectsBadCuts) {
  EXPECT_THROW(negativity(max_entangled(2), Cut{0, 1}), std::invalid_argument);
  EXPECT_THROW(negativity(max_entangled(2), Cut{4}), std::out_of_range);
}

TEST(RgPptClosed, KnownValues) {
  EXPECT_NEAR(rg_ppt_closed(max_entangled(2), Cut{0}).value, 1.0, 1e-12);
  for (std::size_t d : {2u, 3u, 4u}) EXPECT_NEAR(rg_ppt_closed(max_entangled(d), Cut{0}).value, double(d) - 1, 1e-10);
  EXPECT_EQ(rg_ppt_closed(product_state(3), Cut{0}).value, 0.0);
}

TEST(RgPptClosed, SandwichAndLowerBoundOfSdp) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto rho = random_density(kQubits, 21, i);
    const double n = negativity(rho, Cut{0}).value;
    const double r = rg_ppt_closed(rho, Cut{0}).value;
    EXPECT_GE(r, n - 1e-8);
    EXPECT_LE(r, 2 * n + 1e-8);
    // the closed-form witness is feasible for the SDP, so it cannot beat it
    EXPECT_LE(r, e_nm_ppt(rho, Cut{0}, kUnbounded, 1.0).value + 1e-6);
  }
}

TEST(ENmPpt, IsotropicAgreesWithClosedFormWhereItIsExact) {
  for (int d : {2, 3})
    for (double p : {0.1, 0.5, 0.8, 1.0})
      for (double n : {double(d - 1), double(d), 2.0 * d}) {
        const double sdp = e_nm_ppt(isotropic(std::size_t(d), p), Cut{0}, n, 1.0).value;
        EXPECT_NEAR(sdp, isotropic_e_n1(d, p, n), 1e-5) << "d=" << d << " p=" << p << " n=" << n;
      }
}

TEST(ENmPpt, IsotropicBelowBranchPoint) {
  // For n < d-1 the optimal isotropic witness is the rescaled flip operator,
  // giving min(1, n/(d-1)) * (d F - 1) with F = <P+|rho|P+>.
  for (int d : {3, 4})
    for (double p : {0.3, 0.7, 1.0})
      for (double n : {0.5, 1.0}) {
        if (n >= d - 1) continue;
        const double f = p + (1 - p) / (d * d);
        const double want = std::max(0.0, n / (d - 1) * (d * f - 1));
        EXPECT_NEAR(e_nm_ppt(isotropic(std::size_t(d), p), Cut{0}, n, 1.0).value, want, 1e-5);
      }
}

TEST(ENmPpt, BellMatchesClosedForm) {
  EXPECT_NEAR(e_nm_ppt(max_entangled(2), Cut{0}, kUnbounded, 1.0).value,
              rg_ppt_closed(max_entangled(2), Cut{0}).value, 1e-6);
}

TEST(ENmPpt, SeparableAndPptStatesGiveZero) {
  EXPECT_NEAR(e_nm_ppt(product_state(4), Cut{0}, kUnbounded, 1.0).value, 0.0, 1e-6);
  EXPECT_NEAR(e_nm_ppt(horodecki_3x3(0.5), Cut{0}, 1.0, 1.0).value, 0.0, 1e-6);
}

TEST(ENmPpt, MonotoneInN) {
  const auto rho = random_density(SystemShape{2, 3}, 31);
  double prev = -1.0;
  for (double n : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v = e_nm_ppt(rho, Cut{0}, n, 1.0).value;
    EXPECT_GE(v, prev - 1e-6) << "n=" << n;
    prev = v;
  }
  EXPECT_NEAR(e_nm_ppt(rho, Cut{0}, 0.0, 1.0).value, 0.0, 1e-6);
}

TEST(ENmPpt, Convexity) {
  const auto a = random_density(kQubits, 41), b = max_entangled(2);
  const double ea = e_nm_ppt(a, Cut{0}, 1.0, 1.0).value, eb = e_nm_ppt(b, Cut{0}, 1.0, 1.0).value;
  for (double l : {0.25, 0.5, 0.75}) {
    const DensityMatrix mix(a.op() * l + b.op() * (1 - l));
    EXPECT_LE(e_nm_ppt(mix, Cut{0}, 1.0, 1.0).value, l * ea + (1 - l) * eb + 1e-6);
  }
}

TEST(ENmPpt, CertificateIdentityAndValue) {
  struct Case {
    DensityMatrix rho;
    std::vector<Cut> cuts;
    double n, m;
  };
  const std::vector<Case> cases{
      {max_entangled(2), {Cut{0}}, 1.0, 1.0},
      {random_density(SystemShape{2, 3}, 6), {Cut{0}}, 2.0, 1.0},
      {random_density(kQubits, 7), {Cut{0}}, kUnbounded, 1.0},
      {white_noise_mix(w_ghz_mix(0.6), 0.95), {Cut{0}, Cut{1}, Cut{2}}, 1.5, 1.0},
  };
  for (const auto& c : cases) {
    const auto r = e_nm_ppt(c.rho, c.cuts, c.n, c.m);
    ASSERT_TRUE(r.certificate);
    const auto chk = check_certificate(*r.certificate, c.rho, c.cuts);
    EXPECT_LE(chk.identity_residual, 1e-6);
    EXPECT_LE(chk.ppt_violation, 1e-6);
    EXPECT_NEAR(certificate_value(*r.certificate, c.n, c.m), r.value, 1e-5);
  }
}

TEST(ENmPpt, TensorSquareNearBreakdown) {
  // this one stalls just above 1e-9 primal infeasibility before X loses definiteness
  const auto rho = random_density(kQubits, 7007, 12);
  const auto rr = tensor(rho, rho);
  const double e1 = e_nm_ppt(rr, Cut{0, 2}, 1.0, 1.0).value;
  EXPECT_NEAR(e1, e_nm_ppt(rr, Cut{0, 2}, 2.0, 1.0).value, 1e-6);
  const double e = e_nm_ppt(rho, Cut{0}, 1.0, 1.0).value;
  EXPECT_LE(e1, e * e + 2 * e + 1e-6);
}

TEST(ENmPpt, Errors) {
  EXPECT_THROW(e_nm_ppt(max_entangled(2), Cut{0}, kUnbounded, kUnbounded), std::invalid_argument);
  EXPECT_THROW(e_nm_ppt(max_entangled(2), Cut{0}, -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(e_nm_ppt(max_entangled(2), std::vector<Cut>{}, 1.0, 1.0), std::invalid_argument);
}

TEST(RrPpt, BellAndSeparable) {
  // Tr W = D normalization; dividing by D gives the Tr W = 1 value c1 c2 = 1/2
  EXPECT_NEAR(rr_ppt(max_entangled(2), Cut{0}).value, 2.0, 1e-6);
  EXPECT_NEAR(rr_ppt(product_state(5), Cut{0}).value, 0.0, 1e-6);
  const auto r = rr_ppt(max_entangled(2), Cut{0});
  EXPECT_NEAR(r.witness->op.trace(), 4.0, 1e-6);
  EXPECT_NEAR(evaluate(*r.witness, max_entangled(2)), -2.0, 1e-6);
}

TEST(RrPpt, TwoQubitPureStatesMatchSchmidtProduct) {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random_pure(kQubits, rng);
    const double c1c2 = pure_rr(schmidt_of(psi));
    EXPECT_NEAR(rr_ppt(psi.density(), Cut{0}).value / 4.0, c1c2, 1e-6) << "trial " << t;
  }
}

TEST(PureFormulas, Values) {
  EXPECT_NEAR(pure_rg({1.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(pure_rg({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}), 1.0, 1e-12);
  for (int d : {3, 5}) EXPECT_NEAR(pure_rg(std::vector<double>(std::size_t(d), 1 / std::sqrt(double(d)))), d - 1, 1e-12);
  EXPECT_NEAR(pure_rr({0.8, 0.6}), 0.48, 1e-15);
  EXPECT_THROW(pure_rg({0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(pure_rg({0.6, 0.8}), std::invalid_argument);
}

TEST(PureFormulas, RgPptBoundedByPureRg) {
  Rng rng(71);
  for (const SystemShape& s : {kQubits, SystemShape{2, 3}, SystemShape{3, 3}})
    for (int t = 0; t < 10; ++t) {
      const auto psi = random_pure(s, rng);
      EXPECT_LE(rg_ppt_closed(psi.density(), Cut{0}).value, pure_rg(schmidt_of(psi)) + 1e-8);
    }
}

TEST(IsotropicClosedForm, Values) {
  EXPECT_NEAR(isotropic_e_n1(2, 1.0, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(isotropic_e_n1(2, 1.0 / 3.0, 2.0), 0.0, 1e-15);
  for (int d : {2, 3, 4})
    for (double n : {0.5, 1.0, 5.0}) EXPECT_EQ(isotropic_e_n1(d, 0.0, n), 0.0);
  EXPECT_THROW(isotropic_e_n1(1, 0.5, 1.0), std::invalid_argument);
}

TEST(Rains, Values) {
  for (std::size_t d : {2u, 3u}) {
    EXPECT_NEAR(rains_fidelity(max_entangled(d), Cut{0}), 1.0, 1e-6);
    EXPECT_NEAR(rains_fidelity(maximally_mixed(SystemShape{d, d}), Cut{0}), 1.0 / double(d), 1e-6);
  }
  const auto prod = product_pure({CVector::Unit(2, 0), CVector::Unit(2, 1)});
  EXPECT_NEAR(rains_fidelity(prod.density(), Cut{0}), 0.5, 1e-6);
}

TEST(Concurrence, Values) {
  EXPECT_NEAR(concurrence_2q(max_entangled(2)), 1.0, 1e-10);
  EXPECT_NEAR(concurrence_2q(product_state(8)), 0.0, 1e-7);
  Rng rng(81);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random_pure(kQubits, rng);
    EXPECT_NEAR(concurrence_2q(psi.density()), 2 * pure_rr(schmidt_of(psi)), 1e-8);
  }
  // Werner-type mixture: C = max(0, (3p - 1)/2)
  for (double p : {0.2, 0.5, 0.9}) EXPECT_NEAR(concurrence_2q(isotropic(2, p)), std::max(0.0, (3 * p - 1) / 2), 1e-8);
  EXPECT_THROW(concurrence_2q(max_entangled(3)), std::invalid_argument);
}

TEST(SsrNonlocality, VcStateAndDiagonal) {
  const auto r = ssr_nonlocality(vc_ssr_state());
  EXPECT_NEAR(r.value, 0.5, 1e-6);
  CMatrix g = CMatrix::Zero(4, 4);
  g(1, 2) = g(2, 1) = -1.0;
  Witness w;
  w.op = HermitianMatrix(g, kQubits);
  EXPECT_DOUBLE_EQ(evaluate(w, vc_ssr_state()), -0.5);
  CMatrix diag = CMatrix::Zero(4, 4);
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  EXPECT_NEAR(ssr_nonlocality(DensityMatrix(diag, kQubits)).value, 0.0, 1e-6);
}

TEST(Dps2, SeparableBellAndBoundEntangled) {
  EXPECT_NEAR(rg_dps2(product_state(9), Cut{0}).value, 0.0, 1e-6);
  EXPECT_GE(rg_dps2(max_entangled(2), Cut{0}).value, 1.0 - 1e-6);
  const auto rho = horodecki_3x3(0.5);
  EXPECT_EQ(rg_ppt_closed(rho, Cut{0}).value, 0.0);
  const auto r = rg_dps2(rho, Cut{0});
  EXPECT_GT(r.value, 1e-4);
  EXPECT_NEAR(evaluate(*r.witness, rho), -r.value, 1e-6);
  EXPECT_LE(lambda_max(r.witness->op), 1.0 + 1e-6);
}

TEST(Dps2, WitnessNonnegativeOnProductStates) {
  const auto r = rg_dps2(horodecki_3x3(0.3), Cut{0});
  ProductCheckOptions opt;
  opt.refine_count = 50;
  EXPECT_GE(mc_product_check(*r.witness, 300, 4, opt), -1e-6);
}

TEST(Dps2, DimensionCap) { EXPECT_THROW(rg_dps2(max_entangled(5), Cut{0}), std::invalid_argument); }
