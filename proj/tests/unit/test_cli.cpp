#include "plate/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {
struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "plate");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = plate::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("plate_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path ini(const std::string& body) {
    const auto p = dir / "run.ini";
    std::ofstream(p) << body;
    return p;
  }
  fs::path dir;
};
}  // namespace

TEST_F(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("linear-decay"), std::string::npos);
  EXPECT_EQ(run({"semilinear", "--help"}).code, 0);
}

TEST_F(Cli, EmptyConfigIsAnError) {
  const auto r = run({"--out", dir.string(), "theory-table"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("empty configuration"), std::string::npos);
  EXPECT_EQ(run({"--out", dir.string(), "--config", ini("").string(), "nonexistence"}).code, 2);
}

TEST_F(Cli, UnknownKeyAndSection) {
  auto r = run({"--out", dir.string(), "--config", ini("n = 2\nwidht = 3\n").string(), "theory-table"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("widht"), std::string::npos);
  r = run({"--out", dir.string(), "--config", ini("[linear-decay]\nn = 2\n").string(), "theory-table"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"--out", dir.string(), "bogus"}).code, 2);
}

TEST_F(Cli, TheoryTableWritesCsv) {
  const auto r = run({"--out", dir.string(), "theory-table", "--n", "3", "--grid", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("RESULT pass"), std::string::npos);
  std::ifstream in(dir / "theory_table.csv");
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("n,p_inv,q_inv,d_pl,beta,gamma", 0), 0u);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 231u);
  EXPECT_TRUE(fs::exists(dir / "theory-table.resolved.ini"));
  EXPECT_FALSE(fs::exists(dir / "theory_table.csv.tmp"));
}

TEST_F(Cli, LinearDecayFitTable) {
  const auto cfg = ini(
      "[linear-decay]\nn = 1\npoints = 16384\ndatum = bump\nradius = 2\nband_limit = 2\n"
      "pairs = 1:4\nt_min = 20\nt_max = 200\nsamples = 16\n");
  const auto r = run({"--out", dir.string(), "--config", cfg.string(), "linear-decay"});
  ASSERT_LE(r.code, 1) << r.err;
  const auto fit = slurp(dir / "fit_table.csv");
  EXPECT_NE(fit.find("1,4,1,large,-3/16"), std::string::npos) << fit;
  EXPECT_FALSE(slurp(dir / "decay_series.csv").empty());
}

TEST_F(Cli, OverridesWinOverFile) {
  const auto r = run({"--out", dir.string(), "--config", ini("n = 2\n").string(), "--set", "n=4", "theory-table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(dir / "theory-table.resolved.ini").find("n = 4"), std::string::npos);
  EXPECT_EQ(run({"--out", dir.string(), "--set", "n", "theory-table"}).code, 2);
}

TEST_F(Cli, NonexistenceRejectsBadPairing) {
  const auto cfg = ini("n_values = 5\nm_values = 2\nalpha_values = 10\npairings = 5:5\n");
  EXPECT_EQ(run({"--out", dir.string(), "--config", cfg.string(), "nonexistence"}).code, 2);
}

TEST_F(Cli, SeparateProcessIsDeterministic) {
  const auto cfg = ini("[radial-crosscheck]\nn = 1\npoints = 2048\nhalf_width = 256\nr_lo = 0.5\nr_hi = 1.5\ntimes = 5, 10\nxs = 1, 20\n");
  std::string first;
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / ("run" + std::to_string(i));
    fs::create_directories(out);
    const std::string cmd = std::string(PLATE_CLI_PATH) + " --config " + cfg.string() + " --out " + out.string() +
                            " radial-crosscheck > " + (out / "log").string() + " 2>&1";
    ASSERT_EQ(std::system(cmd.c_str()), 0) << slurp(out / "log");
    const auto csv = slurp(out / "crosscheck.csv");
    ASSERT_FALSE(csv.empty());
    if (i == 0) first = csv;
    else EXPECT_EQ(csv, first);
  }
}
