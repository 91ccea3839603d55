#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli_commands.hpp"

using namespace hopfion;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  return cells;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hopfion_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(CliEval, GridShapeAndOriginRow) {
  const CliRun r = invoke({"eval", "-s", "maxwell-hopfion-1", "-g", "x=-1:1:3", "-g", "y=-1:1:3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "t,x,y,z,re_Fx,im_Fx,re_Fy,im_Fy,re_Fz,im_Fz");
  for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(split(lines[i]).size(), 10u);
  // x runs fastest, so the centre of the 3x3 grid is row 5
  const auto origin = split(lines[5]);
  EXPECT_EQ(std::stod(origin[1]), 0.0);
  EXPECT_EQ(std::stod(origin[2]), 0.0);
  const std::vector<double> want{-1, 0, 0, -1, 0, 0};
  for (std::size_t c = 0; c < want.size(); ++c) EXPECT_NEAR(std::stod(origin[4 + c]), want[c], 1e-15) << c;
  EXPECT_EQ(split(lines[2])[1], "0");
  EXPECT_EQ(split(lines[2])[2], "-1");
}

TEST(CliEval, ValuesRoundTripExactly) {
  const CliRun r = invoke({"eval", "-s", "psi2", "-g", "x=0.1:0.7:4", "-g", "t=0.3"});
  ASSERT_EQ(r.code, 0);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  SolutionId id;
  id.family = Family::psi2;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    const SpacetimePoint x{std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3])};
    const FieldValue v = evaluate(id, x);
    for (int c = 0; c < 4; ++c) {
      EXPECT_EQ(std::stod(cells[4 + 2 * c]), component(v, c).real());
      EXPECT_EQ(std::stod(cells[5 + 2 * c]), component(v, c).imag());
    }
  }
}

TEST(CliEval, ByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> base{"eval", "-s", "knot-pq", "--p", "2", "--q", "3", "-g", "x=-1:1:7", "-g", "z=-1:1:5"};
  auto with = [&](const char* threads) {
    auto a = base;
    a.push_back("--threads");
    a.push_back(threads);
    return invoke(a).out;
  };
  const std::string one = with("1");
  EXPECT_EQ(one, with("1"));
  EXPECT_EQ(one, with("4"));
  EXPECT_EQ(lines_of(one).size(), 36u);
}

TEST(CliEval, CurrentsAndJson) {
  const CliRun c = invoke({"eval", "-s", "dirac-base", "--currents", "-g", "x=0.5"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(lines_of(c.out)[0], "t,x,y,z,j0,j1,j2,j3");
  const CliRun j = invoke({"eval", "-s", "weyl-hopfion-1", "--format", "json", "-g", "z=0:1:2"});
  ASSERT_EQ(j.code, 0);
  const auto doc = cli::json::parse(j.out);
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["columns"].size(), 8u);
}

TEST(CliEval, UsageErrors) {
  EXPECT_EQ(invoke({"eval", "-s", "psi3"}).code, 2);
  EXPECT_EQ(invoke({"eval", "-g", "x=1:0:3"}).code, 2);
  EXPECT_EQ(invoke({"eval", "-g", "w=0:1:3"}).code, 2);
  EXPECT_EQ(invoke({"eval", "-g", "x=0:1:zero"}).code, 2);
  EXPECT_EQ(invoke({"eval", "-s", "knot-pq", "--p", "2", "--q", "4"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"eval", "--help"}).code, 0);
}

TEST(CliVerify, PassingSuiteIsZero) {
  const CliRun r = invoke({"verify", "--suite", "nullness", "--invariant-points", "50", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto doc = cli::json::parse(r.out);
  EXPECT_TRUE(doc["all_pass"].get<bool>());
  EXPECT_EQ(doc["meta"]["seed"], 3);
}

TEST(CliVerify, PlantedPerturbationFailsWithNamedCheck) {
  const CliRun r = invoke({"verify", "--suite", "residuals", "--points", "5", "--perturb", "1e-3"});
  EXPECT_EQ(r.code, 1);
  const auto doc = cli::json::parse(r.out);
  EXPECT_FALSE(doc["all_pass"].get<bool>());
  bool named = false;
  for (const auto& rec : doc["records"])
    if (rec["check"] == "weyl" && rec["solution"] == "weyl-hopfion-1" && !rec["pass"].get<bool>()) named = true;
  EXPECT_TRUE(named);
}

TEST(CliVerify, SameSeedSameReport) {
  const std::vector<std::string> args{"verify", "--suite", "structure,bateman", "--points", "5", "--invariant-points", "30"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliVerify, EmptyOrUnknownSuiteIsUsageError) {
  EXPECT_EQ(invoke({"verify", "--suite", ""}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nullness", "--scheme", "forward"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nullness", "--points", "0"}).code, 2);
}

TEST(CliVerify, OutputFileAndSummary) {
  const fs::path dir = scratch("verify");
  const CliRun r = invoke({"verify", "--suite", "nullness", "--invariant-points", "20", "-o", (dir / "r.json").string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
  std::ifstream f(dir / "r.json");
  EXPECT_TRUE(cli::json::parse(f)["all_pass"].get<bool>());
}

TEST(CliConfig, FileSuppliesOptionsAndFlagsOverride) {
  const fs::path dir = scratch("config");
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# verify settings\nsuite = nullness\ninvariant-points = 25\nseed = 9   # trailing comment\n";
  const CliRun a = invoke({"verify", "--config", cfg.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(cli::json::parse(a.out)["meta"]["seed"], 9);
  const CliRun b = invoke({"verify", "--config", cfg.string(), "--seed", "11"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(cli::json::parse(b.out)["meta"]["seed"], 11);

  std::ofstream(dir / "bad.cfg") << "suite nullness\n";
  EXPECT_EQ(invoke({"verify", "--config", (dir / "bad.cfg").string()}).code, 2);
  EXPECT_EQ(invoke({"verify", "--config", (dir / "missing.cfg").string()}).code, 2);
}

TEST(CliHopf, ChecksAndUnknownName) {
  const CliRun r = invoke({"hopf", "--check", "roundtrip,norm", "--samples", "100"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(invoke({"hopf", "--check", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"hopf", "--check", ""}).code, 2);
}

TEST(CliOracle, KgSupport) {
  EXPECT_EQ(invoke({"oracle", "--check", "kg-support", "--samples", "200"}).code, 0);
  EXPECT_EQ(invoke({"oracle", "--check", "nonsense"}).code, 2);
}

TEST(CliTrace, Figure2PresetWritesLines) {
  const fs::path dir = scratch("fig2");
  const CliRun r = invoke({"trace", "--preset", "fig2", "--out-dir", dir.string(), "--threads", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  int csv = 0, meta = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    csv += e.path().extension() == ".csv";
    meta += e.path().extension() == ".json";
  }
  EXPECT_EQ(csv, 4);
  EXPECT_EQ(meta, 4);
  std::ifstream f(dir / "psi4_seed1.json");
  ASSERT_TRUE(f.good());
  const auto m = cli::json::parse(f);
  EXPECT_EQ(m["solution"], "psi4");
  EXPECT_EQ(m["stop_reason"], "max_length");
  EXPECT_LE(m["max_abs_coordinate"].get<double>(), 1.5);
  std::ifstream line(dir / "psi4_seed1.csv");
  std::string header;
  std::getline(line, header);
  EXPECT_EQ(header, "lambda,x,y,z");
}

TEST(CliTrace, Figure3PresetGivesFourLines) {
  const fs::path dir = scratch("fig3");
  ASSERT_EQ(invoke({"trace", "--preset", "fig3", "--out-dir", dir.string()}).code, 0);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(fs::exists(dir / ("psi4_seed" + std::to_string(i) + ".csv"))) << i;
}

TEST(CliTrace, ZeroFieldSeedStagnates) {
  const fs::path dir = scratch("stagnation");
  const CliRun r = invoke({"trace", "-s", "knot-pq", "--p", "2", "--q", "3", "--seed-point", "0,0,0.5", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(dir / "knot-pq_2_3_seed0.json");
  ASSERT_TRUE(f.good()) << r.out;
  EXPECT_EQ(cli::json::parse(f)["stop_reason"], "stagnation");
}

TEST(CliTrace, UsageErrors) {
  EXPECT_EQ(invoke({"trace"}).code, 2);
  EXPECT_EQ(invoke({"trace", "--preset", "fig9"}).code, 2);
  EXPECT_EQ(invoke({"trace", "--seed-point", "1,2"}).code, 2);
  EXPECT_EQ(invoke({"trace", "--seed-point", "1,2,3", "--rtol", "-1"}).code, 2);
}
