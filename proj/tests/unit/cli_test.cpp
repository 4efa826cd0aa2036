#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "epr/cli.hpp"

namespace epr::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result epr(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("epr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kData = EPR_TEST_DATA_DIR;

TEST_F(CliTest, SolvePassesOnATriangle) {
  const auto file = write("t.txt", "3\n0 1 1\n1 2 1\n0 2 1\n");
  const auto r = epr({"solve", file, "--data-dir", kData, "--audit-all-pairs"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.at("pass").get<bool>());
  EXPECT_TRUE(doc.at("audit_all_pairs").at("pass").get<bool>());
  EXPECT_NEAR(doc.at("upper_bound").get<double>(), 2.25, 1e-12);
  EXPECT_EQ(doc.at("constants").at("alpha_15"), "0.809016994374947");
}

TEST_F(CliTest, SolveWritesCertificateFile) {
  const auto file = write("e.txt", "2\n0 1 1\n");
  const auto r = epr({"solve", file, "--data-dir", kData, "--out", path("cert.json")});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  std::ifstream in(path("cert.json"));
  const auto doc = nlohmann::json::parse(in);
  EXPECT_NEAR(doc.at("min_ratio").get<double>(), (1 + std::sqrt(5.0)) / 4, 1e-12);
}

TEST_F(CliTest, BaselineAndToleranceFlags) {
  const auto file = write("p.txt", "3\n0 1 1\n1 2 1\n");
  EXPECT_EQ(epr({"solve", file, "--algorithm", "baseline34", "--data-dir", kData}).code, kSuccess);
  EXPECT_EQ(epr({"solve", file, "--tolerance", "-1"}).code, kInputError);
}

TEST_F(CliTest, FailedCertificateExitsWithOne) {
  const auto file = write("p.txt", "3\n0 1 1\n1 2 1\n");
  // Auditing all pairs of the baseline compares against alpha, which 3/4 does not reach.
  const auto r = epr({"solve", file, "--algorithm", "baseline34", "--audit-all-pairs", "--data-dir", kData});
  EXPECT_EQ(r.code, kCheckFailed) << r.out;
}

TEST_F(CliTest, QmcNeedsABipartiteInstance) {
  const auto tri = write("t.txt", "3\n0 1 1\n1 2 1\n0 2 1\n");
  EXPECT_EQ(epr({"solve", tri, "--qmc", "--data-dir", kData}).code, kInputError);
  const auto path4 = write("p.txt", "4\n0 1 1\n1 2 1\n2 3 1\n");
  const auto r = epr({"solve", path4, "--qmc", "--data-dir", kData});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("hamiltonian"), "qmc");
}

TEST_F(CliTest, InputErrorsExitWithTwo) {
  const auto bad = write("bad.txt", "3\n0 1 1\n0 0 1\n");
  const auto r = epr({"solve", bad});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(epr({"solve", path("missing.txt")}).code, kInputError);
  EXPECT_EQ(epr({"lp", bad, "--bogus"}).code, kInputError);
  EXPECT_EQ(epr({"frobnicate"}).code, kInputError);
  EXPECT_EQ(epr({}).code, kInputError);
  EXPECT_EQ(epr({"gen", "petersen", "--size", "4"}).code, kInputError);
  EXPECT_EQ(epr({"verify-lemma5", "--k", "4", "--data-dir", kData}).code, kInputError);
  EXPECT_EQ(epr({"--help"}).code, kSuccess);
}

TEST_F(CliTest, LpReportsExactValues) {
  const auto file = write("c5.txt", "5\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n0 4 1\n");
  const auto r = epr({"lp", file, "--exact"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("lp_value_exact"), "5/2");
  EXPECT_EQ(doc.at("exact_upper_bound"), "15/4");
  EXPECT_EQ(doc.at("cycles").size(), 1U);
}

TEST_F(CliTest, GenRoundTripsThroughSolve) {
  ASSERT_EQ(epr({"gen", "random_gnp", "--size", "9", "--p", "0.4", "--seed", "3", "--weights", "int:5", "--format",
                 "json", "--out", path("g.json")})
                .code,
            kSuccess);
  const auto first = epr({"gen", "random_gnp", "--size", "9", "--p", "0.4", "--seed", "3", "--weights", "int:5"});
  const auto second = epr({"gen", "random_gnp", "--size", "9", "--p", "0.4", "--seed", "3", "--weights", "int:5"});
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(epr({"solve", path("g.json"), "--data-dir", kData}).code, kSuccess);
}

TEST_F(CliTest, OracleReportsLambdaMax) {
  const auto file = write("e.txt", "2\n0 1 1\n");
  const auto r = epr({"oracle", file, "--data-dir", kData});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc.at("lambda_max").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc.at("exact_ratio").get<double>(), (1 + std::sqrt(5.0)) / 4, 1e-12);
  const auto big = epr({"gen", "cycle", "--size", "15", "--out", path("c15.txt")});
  EXPECT_EQ(epr({"oracle", path("c15.txt"), "--data-dir", kData}).code, kInputError);
}

TEST_F(CliTest, VerifySingleCycleLength) {
  for (const char* k : {"3", "5", "7", "11"}) {
    const auto r = epr({"verify-lemma5", "--k", k, "--json", "--data-dir", kData});
    ASSERT_EQ(r.code, kSuccess) << r.out;
    EXPECT_TRUE(nlohmann::json::parse(r.out).at("pass").get<bool>());
  }
}

TEST_F(CliTest, VerifySuitePasses) {
  const auto r = epr({"verify", "--data-dir", kData});
  EXPECT_EQ(r.code, kSuccess) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  for (const char* name : {"constants.cycle_slack", "tilted_pair.epr_overlap", "baseline.min_ratio",
                           "star_bound.random_states", "psi.path_energy", "cycle_k15.all_pairs",
                           "cycle_k7.edge_formula"})
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST_F(CliTest, VerifyNamesACorruptedCache) {
  for (const char* kind : {"rho3", "rho5", "psi"}) fs::copy_file(fs::path(kData) / (std::string(kind) + ".json"), dir_ / (std::string(kind) + ".json"));
  std::ofstream(dir_ / "psi.json") << "not json";
  const auto r = epr({"verify", "--k", "3", "--data-dir", dir_.string()});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_NE(r.out.find("FAIL data_cache.load"), std::string::npos) << r.out;
}

TEST_F(CliTest, SynthWritesAVerifiedState) {
  const auto r = epr({"synth", "--k", "3", "--out", path("rho3.json")});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::ifstream in(path("rho3.json"));
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("kind"), "rho3");
  EXPECT_TRUE(doc.at("verification").at("pass").get<bool>());
  EXPECT_EQ(epr({"synth", "--k", "7"}).code, kInputError);
}

TEST_F(CliTest, BenchIsDeterministicApartFromTiming) {
  auto strip_timing = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string out, line;
    while (std::getline(in, line)) {
      // wall_ms is the second-to-last column.
      const auto last = line.rfind(',');
      const auto before = line.rfind(',', last - 1);
      out += line.substr(0, before) + line.substr(last) + '\n';
    }
    return out;
  };
  const std::vector<std::string> args = {"bench", "--family", "random_gnp", "--size", "6", "--size", "9",
                                         "--count", "3", "--seed", "5", "--data-dir", kData};
  auto one = args;
  one.insert(one.end(), {"--jobs", "1"});
  auto two = args;
  two.insert(two.end(), {"--jobs", "2"});
  const auto a = epr(one);
  const auto b = epr(two);
  ASSERT_EQ(a.code, kSuccess) << a.err;
  EXPECT_EQ(strip_timing(a.out), strip_timing(b.out));
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 7);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
            "schema_version,instance,n,edges,lp_value,upper_bound,achieved,lambda_max,ratio_lp,ratio_exact,"
            "min_edge_ratio,pass,wall_ms,error");
}

TEST_F(CliTest, BenchOverACorpusRecordsErrors) {
  fs::create_directories(dir_ / "corpus");
  write("corpus/a.txt", "2\n0 1 1\n");
  write("corpus/b.txt", "3\n0 1 1\n1 2 1\n0 2 1\n");
  write("corpus/c.txt", "2\n0 1 -1\n");
  const auto r = epr({"bench", "--corpus", path("corpus"), "--data-dir", kData});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4U);
  EXPECT_EQ(lines[1].substr(0, 7), "1,a.txt");
  EXPECT_NE(lines[1].find(",true,"), std::string::npos);
  EXPECT_NE(lines[3].find("negative weight"), std::string::npos);
  EXPECT_NE(lines[3].find(",false,"), std::string::npos);
}

}  // namespace
}  // namespace epr::cli
