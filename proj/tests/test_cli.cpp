#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mobnbody::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mobnbody_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  std::string read(const std::string& name) const {
    std::ifstream f(path(name));
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }
  fs::path dir_;
};

TEST(Cli, ClassifyParabolicMatrix) {
  const auto r = run({"classify-matrix", "1", "0", "5", "0", "0", "0", "1", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["class"], "parabolic");
  EXPECT_EQ(j["fixed_points"], json::array({"inf"}));
}

TEST(Cli, ClassifyWithConjugations) {
  const auto r = run({"classify-matrix", "2", "0", "0", "0", "0", "0", "0.5", "0", "--conjugations", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["class"], "hyperbolic");
  EXPECT_EQ(j["conjugation_mismatches"], 0);
}

TEST(Cli, SolveMasslessParabolicRoots) {
  const auto r = run({"family", "solve", "--class", "parabolic", "--shape", "two-body", "--m", "0", "--R", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["roots"].size(), 2u);
  EXPECT_NEAR(j["roots"][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["roots"][1].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(j["physical"].is_null());
}

TEST(Cli, DistanceQuarterCircle) {
  const auto r = run({"distance", "--R", "1", "--z1", "0", "0", "--z2", "0", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["distance"].get<double>(), std::numbers::pi / 2.0, 1e-15);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"launch"}).code, 2);
  EXPECT_EQ(run({"classify-matrix", "1", "0"}).code, 2);
  EXPECT_EQ(run({"distance", "--z1", "0", "0"}).code, 2);
  EXPECT_EQ(run({"family", "solve", "--class", "spiral", "--shape", "two-body"}).code, 2);
  EXPECT_EQ(run({"distance", "--R", "-1", "--z1", "0", "0", "--z2", "0", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOne) {
  const auto infeasible =
      run({"family", "build", "--class", "hyperbolic", "--shape", "two-body", "--r", "0.5", "--R", "1"});
  EXPECT_EQ(infeasible.code, 1);
  EXPECT_NE(infeasible.err.find("mass"), std::string::npos);
  EXPECT_EQ(run({"family", "solve", "--class", "parabolic", "--shape", "two-body", "--m", "10"}).code, 0);
  EXPECT_EQ(run({"family", "build", "--class", "parabolic", "--shape", "two-body", "--m", "10"}).code, 1);
}

TEST_F(CliFiles, MalformedJsonNamesTheField) {
  write("bad.json", R"({"R": 1.0, "bodies": [{"mass": "heavy", "z": [0.1, 0.0], "v": [0.0, 0.0]}]})");
  const auto r = run({"verify", "--class", "elliptic", "--input", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bodies[0].mass"), std::string::npos) << r.err;

  write("broken.json", "{\"R\": 1.0, ");
  EXPECT_EQ(run({"verify", "--class", "elliptic", "--input", path("broken.json")}).code, 2);
}

TEST_F(CliFiles, SingularInputExitsOne) {
  write("clash.json",
        R"({"R": 1.0, "bodies": [{"mass": 1.0, "z": [1.0, 0.0], "v": [0.0, 0.0]},
                                  {"mass": 1.0, "z": [-1.0, 0.0], "v": [0.0, 0.0]}]})");
  const auto r = run({"verify", "--class", "elliptic", "--input", path("clash.json")});
  EXPECT_EQ(r.code, 1) << r.err;
}

TEST_F(CliFiles, BuildIntegrateVerifyRoundTrip) {
  auto b = run({"family", "build", "--class", "elliptic", "--shape", "two-body", "--r", "0.5", "--output",
                path("fam.json"), "--summary", path("fam_summary.json")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_LT(json::parse(read("fam_summary.json"))["residual"]["max_norm"].get<double>(), 1e-10);

  auto v = run({"verify", "--class", "elliptic", "--input", path("fam.json")});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_LT(json::parse(v.out)["max_norm"].get<double>(), 1e-10);

  auto i = run({"integrate", "--input", path("fam.json"), "--t-end", "1", "--tol", "1e-11", "--samples", "20",
                "--output", path("traj.csv"), "--summary", path("traj.json")});
  ASSERT_EQ(i.code, 0) << i.err;
  EXPECT_EQ(json::parse(read("traj.json"))["termination"], "completed");
  const std::string csv = read("traj.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,z0_re,z0_im,v0_re,v0_im,z1_re,z1_im,v1_re,v1_im,energy");

  auto t = run({"verify-trajectory", "--class", "elliptic", "--input", path("fam.json"), "--trajectory",
                path("traj.csv")});
  ASSERT_EQ(t.code, 0) << t.err;
  const auto j = json::parse(t.out);
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-7);
  EXPECT_NEAR(j["rate"][1].get<double>(), -0.5, 1e-6);
}

TEST_F(CliFiles, OutputIsDeterministic) {
  ASSERT_EQ(run({"family", "build", "--class", "elliptic", "--shape", "equilateral", "--r", "0.7", "--output",
                 path("c.json")})
                .code,
            0);
  const auto a = run({"integrate", "--input", path("c.json"), "--t-end", "0.5", "--samples", "10"});
  const auto b = run({"integrate", "--input", path("c.json"), "--t-end", "0.5", "--samples", "10"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  const auto o1 = run({"orbit-sample", "--class", "homographic-loxodromic", "--z0", "1", "0", "--t-end", "1"});
  const auto o2 = run({"orbit-sample", "--class", "homographic-loxodromic", "--z0", "1", "0", "--t-end", "1"});
  ASSERT_EQ(o1.code, 0) << o1.err;
  EXPECT_EQ(o1.out, o2.out);
}

}  // namespace
