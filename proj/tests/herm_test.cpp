#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace witent;
using namespace witent::testing;

namespace {

const SystemShape kQubits{2, 2};

HermitianMatrix pplus(std::size_t d) {
  return HermitianMatrix::projector(max_entangled_vector(d), SystemShape{d, d});
}

}  // namespace

TEST(Tensor, IdentityAndPauli) {
  const auto i2 = HermitianMatrix::identity(SystemShape{2});
  EXPECT_EQ(tensor(i2, i2).mat(), CMatrix::Identity(4, 4));
  const HermitianMatrix z(pauli_z(), SystemShape{2});
  const auto zz = tensor(z, z);
  EXPECT_EQ(zz.mat(), RVector((RVector(4) << 1, -1, -1, 1).finished()).asDiagonal().toDenseMatrix().cast<cplx>());
  EXPECT_EQ(zz.shape().local_dims(), (std::vector<std::size_t>{2, 2}));
}

TEST(Tensor, RankOneProjectors) {
  CVector e0 = CVector::Unit(2, 0), e1 = CVector::Unit(2, 1);
  const auto p = tensor(HermitianMatrix::projector(e0, SystemShape{2}), HermitianMatrix::projector(e1, SystemShape{2}));
  CMatrix want = CMatrix::Zero(4, 4);
  want(1, 1) = 1.0;
  EXPECT_EQ(p.mat(), want);
}

TEST(PartialTrace, BellGivesMaximallyMixed) {
  const auto r = partial_trace(pplus(2), Cut{0});
  EXPECT_LT((r.mat() - 0.5 * CMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(PartialTrace, ProductAndRandomTensor) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const HermitianMatrix a(random_hermitian(3, rng), SystemShape{3});
    const HermitianMatrix b(random_hermitian(2, rng), SystemShape{2});
    const auto ab = tensor(a, b);
    EXPECT_LT((partial_trace(ab, Cut{0}).mat() - a.mat() * b.trace()).norm(), 1e-12);
    EXPECT_LT((partial_trace(ab, Cut{1}).mat() - b.mat() * a.trace()).norm(), 1e-12);
  }
}

TEST(PartialTrace, IsotropicReducesToMaximallyMixed) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto r = partial_trace(isotropic(d, 0.37).op(), Cut{0});
    EXPECT_LT((r.mat() - CMatrix::Identity(Eigen::Index(d), Eigen::Index(d)) / double(d)).norm(), 1e-14);
  }
}

TEST(PartialTrace, MiddleOfThreeParties) {
  Rng rng(3);
  const HermitianMatrix a(random_hermitian(2, rng), SystemShape{2});
  const HermitianMatrix b(random_hermitian(3, rng), SystemShape{3});
  const HermitianMatrix c(random_hermitian(2, rng), SystemShape{2});
  const auto abc = tensor(tensor(a, b), c);
  EXPECT_LT((partial_trace(abc, Cut{1}).mat() - b.mat() * a.trace() * c.trace()).norm(), 1e-12);
  EXPECT_LT((partial_trace(abc, Cut{0, 2}).mat() - kron(a.mat(), c.mat()) * b.trace()).norm(), 1e-12);
}

TEST(PartialTranspose, PPlusIsSwapOverD) {
  for (Eigen::Index d : {2, 3, 4}) {
    const auto pt = partial_transpose(pplus(std::size_t(d)), Cut{0});
    EXPECT_LT((pt.mat() - swap_operator(d) / double(d)).norm(), 1e-15) << "d=" << d;
  }
}

TEST(PartialTranspose, ProductState) {
  Rng rng(5);
  const HermitianMatrix a(random_hermitian(2, rng), SystemShape{2});
  const HermitianMatrix b(random_hermitian(3, rng), SystemShape{3});
  const auto pt = partial_transpose(tensor(a, b), Cut{0});
  EXPECT_LT((pt.mat() - kron(a.mat().transpose(), b.mat())).norm(), 1e-15);
  const auto ptb = partial_transpose(tensor(a, b), Cut{1});
  EXPECT_LT((ptb.mat() - kron(a.mat(), b.mat().transpose())).norm(), 1e-15);
}

TEST(PartialTranspose, InvolutionTraceHermiticity) {
  Rng rng(17);
  const SystemShape shape{2, 3, 2};
  for (int t = 0; t < 50; ++t) {
    const HermitianMatrix m(random_hermitian(12, rng), shape);
    for (const Cut& c : {Cut{0}, Cut{1}, Cut{0, 2}}) {
      const auto p = partial_transpose(m, c);
      EXPECT_EQ(partial_transpose(p, c).mat(), m.mat());
      EXPECT_NEAR(p.trace(), m.trace(), 1e-12);
      EXPECT_LT((p.mat() - p.mat().adjoint()).norm(), 1e-15);
    }
  }
}

TEST(PartialTranspose, RejectsShapeMismatch) {
  EXPECT_THROW(partial_transpose(CMatrix::Identity(4, 4), SystemShape{2, 3}, Cut{0}), std::invalid_argument);
  EXPECT_THROW(partial_transpose(CMatrix::Identity(4, 4), kQubits, Cut{2}), std::out_of_range);
}

TEST(Permute, SwapOfTwoFactors) {
  Rng rng(23);
  const CMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  const CMatrix p = permute_subsystems(kron(a, b), SystemShape{2, 3}, {1, 0});
  EXPECT_LT((p - kron(b, a)).norm(), 1e-15);
}

TEST(Eigen, DiagonalAndPauli) {
  RMatrix d = RVector((RVector(3) << 3, 1, 2).finished()).asDiagonal();
  const auto e = eig_hermitian(HermitianMatrix::from_real(d));
  EXPECT_DOUBLE_EQ(e.values[0], 3);
  EXPECT_DOUBLE_EQ(e.values[1], 2);
  EXPECT_DOUBLE_EQ(e.values[2], 1);
  const auto x = eig_hermitian(HermitianMatrix(pauli_x()));
  EXPECT_NEAR(x.values[0], 1, 1e-15);
  EXPECT_NEAR(x.values[1], -1, 1e-15);
}

TEST(Eigen, BellPartialTranspose) {
  const auto e = eig_hermitian(partial_transpose(pplus(2), Cut{0}));
  EXPECT_NEAR(e.values[0], 0.5, 1e-14);
  EXPECT_NEAR(e.values[1], 0.5, 1e-14);
  EXPECT_NEAR(e.values[2], 0.5, 1e-14);
  EXPECT_NEAR(e.values[3], -0.5, 1e-14);
  EXPECT_NEAR(trace_norm(partial_transpose(pplus(2), Cut{0})), 2.0, 1e-14);
}

TEST(Eigen, RandomReconstructionAgainstOracle) {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Index n = 1 + Eigen::Index(rng.next_u64() % 36);
    const CMatrix m = random_hermitian(n, rng);
    const auto e = eig_hermitian(HermitianMatrix(m));
    const CMatrix& v = e.vectors;
    const double scale = 1.0 + m.norm();
    EXPECT_LT((v * e.values.cast<cplx>().asDiagonal() * v.adjoint() - m).norm() / scale, 1e-10) << "n=" << n;
    EXPECT_LT((v.adjoint() * v - CMatrix::Identity(n, n)).norm(), 1e-10);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_GE(e.values[i - 1], e.values[i]);
    const RVector ref = oracle_eigenvalues(m).reverse();
    EXPECT_LT((e.values - ref).cwiseAbs().maxCoeff() / scale, 1e-10);
  }
}

TEST(TraceNorm, Basics) {
  EXPECT_NEAR(trace_norm(max_entangled(3).op()), 1.0, 1e-14);
  EXPECT_EQ(trace_norm(HermitianMatrix::zero(kQubits)), 0.0);
}

TEST(HsInner, Basics) {
  const auto rho = random_density(SystemShape{3}, 1);
  EXPECT_NEAR(hs_inner(HermitianMatrix::identity(SystemShape{3}), rho.op()), 1.0, 1e-14);
  EXPECT_NEAR(hs_inner(pplus(3), pplus(3)), 1.0, 1e-14);
  EXPECT_EQ(hs_inner(HermitianMatrix(pauli_x()), HermitianMatrix(pauli_y())), 0.0);
  EXPECT_THROW(hs_inner(pplus(2), pplus(3)), std::invalid_argument);
}

TEST(HermitianMatrix, RejectsBadInput) {
  CMatrix m(2, 2);
  m << 1, 2, 3, 1;
  EXPECT_THROW(HermitianMatrix{m}, std::invalid_argument);
  EXPECT_THROW(HermitianMatrix(CMatrix::Identity(2, 3)), std::invalid_argument);
  EXPECT_THROW(HermitianMatrix(CMatrix::Identity(4, 4), SystemShape{3}), std::invalid_argument);
}

TEST(Cut, Validation) {
  EXPECT_EQ((Cut{1, 0, 1}.parties()), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(Cut(std::vector<std::size_t>{}), std::invalid_argument);
  EXPECT_THROW(Cut{3}.check_range(kQubits), std::out_of_range);
  EXPECT_THROW((Cut{0, 1}.check_bipartition(kQubits)), std::invalid_argument);
  EXPECT_EQ(Cut{1}.complement(SystemShape{2, 3, 4}).parties(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ((Cut{0, 2}.side_dim(SystemShape{2, 3, 4})), 8u);
}
