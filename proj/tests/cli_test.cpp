#include <witent/witent.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace witent;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WITENT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "witent_cli_" + name; }

std::string write_state(const std::string& name, const DensityMatrix& rho) {
  const auto path = tmp(name);
  std::ofstream(path) << state_to_json(rho).dump();
  return path;
}

double value_of(const std::string& out) { return json::parse(out).at("value").get<double>(); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, ComputeBellValues) {
  const auto bell = write_state("bell.json", max_entangled(2));
  auto r = run("compute --measure negativity --state " + bell + " --cut 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(value_of(r.out), 0.5, 1e-10);
  r = run("compute --measure rg-ppt --state " + bell + " --cut 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(value_of(r.out), 1.0, 1e-10);
  r = run("compute --measure e-nm-ppt --state " + bell + " --n inf --m 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(value_of(r.out), 1.0, 1e-6);
}

TEST(Cli, ComputeSsr) {
  const auto vc = write_state("vc.json", vc_ssr_state());
  const auto r = run("compute --measure ssr-nonlocality --state " + vc);
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(value_of(r.out), 0.5, 1e-5);
}

TEST(Cli, WitnessOutAndValidate) {
  const auto bell = write_state("bell2.json", max_entangled(2));
  const auto wpath = tmp("w.json");
  ASSERT_EQ(run("compute --measure e-nm-ppt --state " + bell + " --n 1 --witness-out " + wpath).code, 0);
  const auto r = run("validate-witness --witness " + wpath + " --state " + bell + " --samples 50 --seed 1");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("valid").get<bool>());
  EXPECT_NEAR(j.at("expectation").get<double>(), -1.0, 1e-6);
  EXPECT_EQ(j.at("product_check").get<std::string>(), "no_violation_found");
}

TEST(Cli, GenStateRoundTrip) {
  const auto r = run("gen-state --family isotropic --d 3 --p 0.4");
  ASSERT_EQ(r.code, 0);
  EXPECT_LT((state_from_json(json::parse(r.out)).mat() - isotropic(3, 0.4).mat()).norm(), 1e-15);
  EXPECT_EQ(run("gen-state --family random --dims 2,2").code, 1);  // seed mandatory
  EXPECT_EQ(run("gen-state --family random --dims 2,2 --seed 4").out,
            run("gen-state --family random --dims 2,2 --seed 4").out);
}

TEST(Cli, BadInputExitCodes) {
  const auto bell = write_state("bell3.json", max_entangled(2));
  EXPECT_EQ(run("compute --measure bogus --state " + bell).code, 1);
  EXPECT_EQ(run("compute --measure negativity --state /nonexistent.json").code, 1);
  EXPECT_EQ(run("compute --measure negativity --state " + bell + " --cut 5").code, 1);
  EXPECT_EQ(run("compute --measure e-nm-ppt --state " + bell + " --n inf --m inf").code, 1);
  EXPECT_EQ(run("reproduce fig56 --samples 10").code, 1);  // stochastic without seed
  EXPECT_EQ(run("reproduce nothing").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Fig56IsByteIdenticalAndSane) {
  const std::string args = "reproduce fig56 --dim 2 --samples 200 --seed 7";
  const auto a = run(args), b = run(args + " --workers 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto ls = lines(a.out);
  ASSERT_GE(ls.size(), 203u);
  EXPECT_EQ(ls[0].rfind("# witent ", 0), 0u);
  EXPECT_NE(ls[0].find("seed=7"), std::string::npos);
  EXPECT_NE(ls[0].find("config="), std::string::npos);
  EXPECT_EQ(ls[1], "index,negativity,rg_ppt");
  for (std::size_t i = 2; i < 202; ++i) {
    double n = 0, r = 0;
    ASSERT_EQ(std::sscanf(ls[i].c_str(), "%*d,%lf,%lf", &n, &r), 2);
    EXPECT_GE(r, n - 1e-8);
    EXPECT_LE(r, 4 * n + 1e-8);
  }
  EXPECT_NE(run("reproduce fig56 --dim 2 --samples 200 --seed 8").out, a.out);
}

TEST(Cli, HeisenbergColumnsAgree) {
  const auto r = run("reproduce heisenberg --N 6 --beta-grid 0:20:41");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 43u);
  EXPECT_EQ(ls[1].rfind("beta,T,U,M,witness_value,estimate,chi_exact,chi_witness_form", 0), 0u);
  for (std::size_t i = 2; i < ls.size(); ++i) {
    std::vector<std::string> cols;
    std::istringstream in(ls[i]);
    for (std::string c; std::getline(in, c, ',');) cols.push_back(c);
    ASSERT_GE(cols.size(), 6u);
    EXPECT_NEAR(std::stod(cols[4]), std::stod(cols[5]), 1e-10) << ls[i];
  }
}

TEST(Cli, IsotropicTable) {
  const auto r = run("reproduce isotropic --d 3 --n-list 2,3,6 --p-count 5");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u + 15u + 1u);
  double worst = -1;
  ASSERT_EQ(std::sscanf(ls.back().c_str(), "# summary max_abs_closed_minus_sdp=%lf", &worst), 1);
  EXPECT_LE(worst, 1e-5);
}
