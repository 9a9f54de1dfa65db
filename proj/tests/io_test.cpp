#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace witent;

TEST(Json, StateRoundTripIsExact) {
  const auto rho = random_density(SystemShape{2, 3}, 12);
  const auto back = state_from_json(json::parse(state_to_json(rho).dump()));
  EXPECT_EQ(back.mat(), rho.mat());
  EXPECT_EQ(back.shape().local_dims(), rho.shape().local_dims());
}

TEST(Json, WitnessRoundTripIsExact) {
  const auto r = e_nm_ppt(random_density(SystemShape{2, 2}, 4), Cut{0}, 1.0, 1.0);
  const auto w = *r.witness;
  const auto back = witness_from_json(json::parse(witness_to_json(w).dump()));
  EXPECT_EQ(back.op.mat(), w.op.mat());
  EXPECT_EQ(back.cls, w.cls);
  EXPECT_EQ(back.n, w.n);
  EXPECT_EQ(back.m, w.m);
  ASSERT_TRUE(back.P);
  EXPECT_EQ(back.P->mat(), w.P->mat());
  ASSERT_EQ(back.Q.size(), 1u);
  EXPECT_EQ(back.Q[0].mat(), w.Q[0].mat());
  EXPECT_EQ(back.cuts, w.cuts);
}

TEST(Json, UnboundedIsNull) {
  Witness w;
  w.op = HermitianMatrix::identity(SystemShape{2});
  const auto j = witness_to_json(w);
  EXPECT_TRUE(j.at("n").is_null());
  EXPECT_TRUE(std::isinf(witness_from_json(j).n));
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(hermitian_from_json(json::object()), std::invalid_argument);
  EXPECT_THROW(hermitian_from_json(json::parse(R"({"re": [[1, 0], [0]]})")), std::invalid_argument);
  EXPECT_THROW(hermitian_from_json(json::parse(R"({"re": [[1, 2], [0, 1]]})")), std::invalid_argument);
  EXPECT_THROW(state_from_json(json::parse(R"({"re": [[2, 0], [0, 0]]})")), std::invalid_argument);
  EXPECT_THROW(state_from_json(json::parse(R"({"dims": [3], "re": [[1, 0], [0, 0]]})")), std::invalid_argument);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), std::invalid_argument);
}

TEST(Json, ImaginaryPartIsRead) {
  const auto h = hermitian_from_json(json::parse(R"({"re": [[0, 0], [0, 0]], "im": [[0, -1], [1, 0]]})"));
  EXPECT_EQ(h.mat()(0, 1), cplx(0, -1));
  EXPECT_FALSE(h.has_shape() && h.shape().parties() > 1);
}

TEST(Json, FileRead) {
  const std::string path = ::testing::TempDir() + "witent_io_state.json";
  {
    std::ofstream out(path);
    out << state_to_json(max_entangled(2)).dump();
  }
  EXPECT_EQ(state_from_json(read_json_file(path)).mat(), max_entangled(2).mat());
  std::remove(path.c_str());
}

TEST(Json, MeasureResult) {
  const auto r = rg_ppt_closed(max_entangled(2), Cut{0});
  const auto j = measure_result_to_json(r, true);
  EXPECT_DOUBLE_EQ(j.at("value").get<double>(), r.value);
  EXPECT_TRUE(j.contains("witness"));
  EXPECT_FALSE(measure_result_to_json(r).contains("witness"));
}
