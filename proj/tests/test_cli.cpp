#include "kendall3d/cli.hpp"
#include "kendall3d/landmark_io.hpp"
#include "support/golden.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace kendall3d {
namespace {

namespace fs = std::filesystem;
using testing::json_diff;
using testing::load_json;
using testing::run_cli;
using nlohmann::json;

const std::string kHouse = std::string(KENDALL3D_TEST_DATA) + "/house.csv";
const fs::path kGolden = KENDALL3D_GOLDEN_DIR;

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("kendall3d_cli_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct GoldenCase {
  std::vector<std::string> args;
  std::string golden;
};

class CliGolden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(CliGolden, MatchesCheckedInOutput) {
  std::vector<std::string> args = GetParam().args;
  args.insert(args.end(), {"--input", kHouse, "--json"});
  const auto r = run_cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_diff(json::parse(r.out), load_json(kGolden / GetParam().golden), 1e-9),
            "");
}

INSTANTIATE_TEST_SUITE_P(
    House, CliGolden,
    ::testing::Values(GoldenCase{{"preshape"}, "house_preshape.json"},
                      GoldenCase{{"basis"}, "house_basis.json"},
                      GoldenCase{{"curvature", "--plane", "xi14,xi24"}, "house_curvature_xi14_xi24.json"},
                      GoldenCase{{"curvature", "--plane", "dl2,dl3"}, "house_curvature_dl2_dl3.json"},
                      GoldenCase{{"check", "--trials", "5", "--seed", "1"}, "house_check.json"},
                      GoldenCase{{"simulate", "--sigma", "0.05", "--n", "3", "--seed", "7"},
                                 "house_simulate.json"}));

TEST(Cli, JsonInputGivesSameShape) {
  const auto csv = run_cli({"preshape", "-i", kHouse, "--json"});
  const auto js = run_cli({"preshape", "-i", std::string(KENDALL3D_TEST_DATA) + "/house.json", "--json"});
  ASSERT_EQ(js.code, 0) << js.err;
  auto a = json::parse(csv.out), b = json::parse(js.out);
  EXPECT_EQ(b["name"], "house");
  a.erase("name");
  b.erase("name");
  EXPECT_EQ(json_diff(b, a, 1e-15), "");
}

TEST(Cli, CoefficientPlaneMatchesLabelPlane) {
  // Unit coefficients on xi14 (position 5) and xi24 (position 6).
  std::string u, v;
  for (int i = 0; i < 23; ++i) {
    u += std::string(i ? "," : "") + (i == 5 ? "1" : "0");
    v += std::string(i ? "," : "") + (i == 6 ? "1" : "0");
  }
  const auto r = run_cli({"curvature", "-i", kHouse, "--u-coords", u, "--v-coords", v, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json want = load_json(kGolden / "house_curvature_xi14_xi24.json");
  EXPECT_NEAR(json::parse(r.out)["sectional_curvature"].get<double>(),
              want["sectional_curvature"].get<double>(), 1e-12);
}

TEST(Cli, SimulateIsByteIdenticalForFixedSeed) {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto& p : {a, b}) {
    const auto r = run_cli({"simulate", "-i", kHouse, "--sigma", "0.1", "--n", "20", "--seed", "42",
                            "--threads", p == a ? "1" : "3", "-o", p.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  const std::string text = slurp(a);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 21);
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, SimulateEmitConfigsWritesLandmarks) {
  const fs::path p = scratch("c.json");
  const auto r = run_cli({"simulate", "-i", kHouse, "--sigma", "0.05", "--n", "3", "--seed", "1",
                          "--emit-configs", "-o", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = load_json(p);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[0]["landmarks"].size(), 10u);
  EXPECT_EQ(doc[0]["preshape"].size(), 9u);
  fs::remove(p);
}

TEST(Cli, OutputFileMatchesStdoutDocument) {
  const fs::path p = scratch("curv.json");
  const auto r = run_cli({"curvature", "-i", kHouse, "--plane", "xi12,xi34", "-o", p.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = run_cli({"curvature", "-i", kHouse, "--plane", "xi12,xi34", "--json"});
  EXPECT_EQ(load_json(p), json::parse(s.out));
  fs::remove(p);
}

TEST(Cli, CollinearInputIsDegenerate) {
  const fs::path p = scratch("line.csv");
  write_file(p, "0,0,0\n1,1,1\n2,2,2\n3,3,3\n4,4,4\n");
  for (const char* cmd : {"basis", "curvature"}) {
    std::vector<std::string> args{cmd, "-i", p.string(), "--json"};
    if (std::string(cmd) == "curvature") args.insert(args.end(), {"--plane", "dl2,dl3"});
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 3) << cmd;
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["error"]["kind"], "singular-shape");
    EXPECT_EQ(doc["error"]["exit_code"], 3);
    EXPECT_FALSE(r.err.empty());
  }
  fs::remove(p);
}

TEST(Cli, DataErrorsExitWithTwo) {
  const fs::path p = scratch("bad.csv");
  write_file(p, "1,2\n");
  EXPECT_EQ(run_cli({"preshape", "-i", p.string()}).code, 2);
  EXPECT_EQ(run_cli({"preshape", "-i", scratch("missing.csv").string()}).code, 2);
  EXPECT_EQ(run_cli({"simulate", "-i", kHouse, "--sigma", "-1", "--n", "2", "--seed", "1"}).code, 2);
  fs::remove(p);
}

TEST(Cli, UsageErrorsExitWithOne) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"curvature", "-i", kHouse}).code, 1);
  EXPECT_EQ(run_cli({"curvature", "-i", kHouse, "--plane", "dl2"}).code, 1);
  EXPECT_EQ(run_cli({"curvature", "-i", kHouse, "--plane", "dl2,bogus"}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "-i", kHouse, "--sigma", "0.1"}).code, 1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, CheckPassesOnRandomShapes) {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 3; ++t) {
    const fs::path p = scratch("rand" + std::to_string(t) + ".csv");
    write_file(p, format_configuration(testing::random_configuration(5, rng), FileFormat::Csv));
    const auto r = run_cli({"check", "-i", p.string(), "--trials", "4", "--json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_LE(json::parse(r.out)["max_relative_discrepancy"].get<double>(), 1e-3);
    fs::remove(p);
  }
}

TEST(Cli, ExitCodeTable) {
  EXPECT_EQ(cli::exit_code_for(ErrorKind::Parse), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::Io), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::Spec), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::InvalidArgument), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::SingularShape), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::DegenerateSpectrum), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::DegeneratePlane), 3);
}

}  // namespace
}  // namespace kendall3d
