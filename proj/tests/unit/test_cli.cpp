#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sisz/cli.hpp"
#include "sisz/io.hpp"
#include "sisz/lattice.hpp"
#include "sisz/sis.hpp"

using namespace sisz;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sisz_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string put(const std::string& name, const std::string& text) const {
    write_file(path(name), text);
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenIsDeterministicAndInRange) {
  const CliRun a = run_cli({"gen", "--n", "4", "--m", "200", "--Q", "5", "--seed", "3"});
  const CliRun b = run_cli({"gen", "--n", "4", "--m", "200", "--Q", "5", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const sis::SisInstance inst = sis::parse_instance(a.out);
  EXPECT_EQ(inst.n(), 4u);
  EXPECT_EQ(inst.m(), 200u);
  std::vector<int> counts(5, 0);
  for (const Integer& v : inst.matrix().data()) {
    ASSERT_GE(v, 0);
    ASSERT_LT(v, 5);
    ++counts[v.get_si()];
  }
  // Each residue within 3 sigma of 800 / 5.
  const double sigma = std::sqrt(800 * 0.2 * 0.8);
  for (int c : counts) EXPECT_LE(std::abs(c - 160.0), 3 * sigma);
  const CliRun other = run_cli({"gen", "--n", "4", "--m", "200", "--Q", "5", "--seed", "4"});
  EXPECT_NE(other.out, a.out);
}

TEST_F(CliTest, GenBasisAndPlanted) {
  const CliRun b = run_cli({"gen", "--kind", "basis", "--n", "3", "--M", "5", "--seed", "1"});
  ASSERT_EQ(b.code, 0) << b.err;
  const lattice::LatticeBasis basis(parse_integer_matrix(b.out));
  EXPECT_LE(basis.entry_bound(), 5);
  EXPECT_NE(basis.determinant(), 0);

  const CliRun p = run_cli({"gen", "--n", "2", "--m", "6", "--Q", "11", "--beta", "1", "--planted", "--seed", "2",
                     "--out", path("planted.txt")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(json::parse(p.out)["result"]["provenance"], "planted");
  EXPECT_EQ(run_cli({"gen", "--n", "0"}).code, 2);
}

TEST_F(CliTest, SolveExitCodes) {
  ASSERT_EQ(run_cli({"gen", "--n", "2", "--m", "6", "--Q", "11", "--beta", "1", "--planted", "--seed", "5", "--out",
                 path("planted.txt")})
                .code,
            0);
  for (const char* solver : {"lattice", "brute-force"}) {
    const CliRun r = run_cli({"solve", "--instance", path("planted.txt"), "--solver", solver});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["result"]["status"], "found");
    EXPECT_TRUE(j["result"]["verify"]["passed"].get<bool>());
  }
  EXPECT_EQ(run_cli({"solve", "--instance", path("planted.txt"), "--beta", "0"}).code, 2);
  EXPECT_EQ(run_cli({"solve", "--instance", path("missing.txt")}).code, 4);
  EXPECT_EQ(run_cli({"solve", "--instance", put("garbage.txt", "not an instance\n")}).code, 4);

  const sis::SisInstance none(IntegerMatrix::from_rows({{1, 2, 4}}), 8, 1);
  put("none.txt", sis::format_instance(none));
  for (const char* solver : {"lattice", "brute-force"}) {
    const CliRun r = run_cli({"solve", "--instance", path("none.txt"), "--solver", solver});
    EXPECT_EQ(r.code, 3) << solver;
    EXPECT_NE(json::parse(r.out)["result"]["status"], "found");
  }
  const CliRun brute = run_cli({"solve", "--instance", path("none.txt"), "--solver", "brute-force"});
  EXPECT_EQ(json::parse(brute.out)["result"]["status"], "none");
}

TEST_F(CliTest, SolversAgreeOnVerdict) {
  for (int seed = 0; seed < 20; ++seed) {
    const std::string file = path("i" + std::to_string(seed) + ".txt");
    ASSERT_EQ(run_cli({"gen", "--n", "2", "--m", "5", "--Q", "13", "--beta", "1", "--seed", std::to_string(seed),
                   "--out", file})
                  .code,
              0);
    const int a = run_cli({"solve", "--instance", file, "--solver", "lattice"}).code;
    const int b = run_cli({"solve", "--instance", file, "--solver", "brute-force"}).code;
    EXPECT_EQ(a, b) << seed;
  }
}

TEST_F(CliTest, ReduceOnIntegerLatticeAndReplay) {
  put("z3.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
  const std::vector<std::string> args{"reduce", "--basis", path("z3.txt"), "--seed", "9", "--c0", "0"};
  auto with = [&](const std::string& tag) {
    std::vector<std::string> a = args;
    for (const std::string& s : {std::string("--out"), path(tag + ".json"), std::string("--csv"), path(tag + ".csv")})
      a.push_back(s);
    return run_cli(a);
  };
  const CliRun first = with("a");
  ASSERT_EQ(first.code, 0) << first.err;
  ASSERT_EQ(with("b").code, 0);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  const json t = json::parse(read_file(path("a.json")));
  EXPECT_EQ(t["command"], "reduce");
  EXPECT_GE(t["result"]["achieved_factor"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(t["result"]["lambda_n"].get<double>(), 1.0);
  const std::string csv = read_file(path("a.csv"));
  EXPECT_EQ(csv.rfind("n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor\n3,12,1,", 0), 0u);

  const CliRun stdout_run = run_cli(args);
  ASSERT_EQ(stdout_run.code, 0);
  EXPECT_EQ(stdout_run.out, read_file(path("a.json")));
  EXPECT_EQ(run_cli({"reduce", "--basis", path("z3.txt"), "--seed", "1", "--Q", "2"}).code, 2);
  EXPECT_EQ(run_cli({"reduce", "--basis", put("sing.txt", "2 2\n1 2\n2 4\n"), "--seed", "1"}).code, 3);
}

TEST_F(CliTest, ReduceWithoutOracleFails) {
  put("z2.txt", "2 2\n1 0\n0 1\n");
  const CliRun r = run_cli({"reduce", "--basis", path("z2.txt"), "--seed", "1", "--c0", "0", "--no-oracle"});
  EXPECT_EQ(r.code, 3);
  const json t = json::parse(r.out);
  EXPECT_FALSE(t["result"]["success"].get<bool>());
  EXPECT_EQ(t["successes"], 0);
}

TEST_F(CliTest, SweepMatchesReduceAndLimits) {
  const CliRun s = run_cli({"sweep", "--n", "3", "--M", "4", "--seed", "77", "--c0", "0", "--threads", "2"});
  ASSERT_EQ(s.code, 0) << s.err;
  std::istringstream lines(s.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "cell,seed,status,n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor");

  // Rebuild the cell's basis and run reduce on it with the cell seed.
  const std::uint64_t cell_seed = derive_seed(77, 0);
  Rng rng(cell_seed, 1);
  const lattice::LatticeBasis basis = lattice::random_basis(3, 4, rng);
  put("cell.txt", format_matrix(basis.matrix()));
  ASSERT_EQ(run_cli({"reduce", "--basis", path("cell.txt"), "--M", "4", "--seed", std::to_string(cell_seed), "--c0", "0",
                 "--csv", path("cell.csv")})
                .code,
            0);
  const std::string csv = read_file(path("cell.csv"));
  const std::string reduce_row = csv.substr(csv.find('\n') + 1, csv.size() - csv.find('\n') - 2);
  EXPECT_EQ(row, "0," + std::to_string(cell_seed) + ",ok," + reduce_row);

  EXPECT_EQ(run_cli({"sweep", "--n", "2", "--M", "1", "--trials", "10001", "--seed", "1"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--n", "3", "--M", "4", "--Q", "3", "--seed", "1"}).code, 2);
}

TEST_F(CliTest, SweepGridIsOrderedAndThreadIndependent) {
  const std::vector<std::string> base{"sweep", "--n", "2", "3", "--M", "2", "--beta", "1", "3", "--trials", "2",
                                      "--seed", "5", "--c0", "0"};
  std::vector<std::string> one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const CliRun a = run_cli(one);
  const CliRun b = run_cli(four);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  int cell = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.rfind(std::to_string(cell) + ",", 0), 0u);
    ++cell;
  }
  EXPECT_EQ(cell, 8);
}

TEST_F(CliTest, StatsCommands) {
  const CliRun md = run_cli({"stats", "moddist", "--Q", "5", "--q", "3", "--seed", "1"});
  ASSERT_EQ(md.code, 0) << md.err;
  const json m = json::parse(md.out);
  EXPECT_EQ(m["delta_exact"], "2/15");
  EXPECT_EQ(m["upper_bound"], "3/20");
  EXPECT_FALSE(m["uniform"].get<bool>());

  const CliRun ic = run_cli({"stats", "incompat", "--n", "3", "--m", "12", "--Q", "104", "--beta", "2", "--seed", "1"});
  ASSERT_EQ(ic.code, 0) << ic.err;
  EXPECT_EQ(json::parse(ic.out)["verdict"], "incompatible");

  const CliRun lf = run_cli({"stats", "lift", "--n", "2", "--m", "5", "--Q", "4", "--beta", "1", "--trials", "3", "--seed",
                      "2"});
  ASSERT_EQ(lf.code, 0) << lf.err;
  EXPECT_EQ(json::parse(lf.out)["result"]["violations"], 0);

  EXPECT_EQ(run_cli({"stats", "moddist", "--Q", "0", "--q", "3", "--seed", "1"}).code, 2);
  EXPECT_EQ(run_cli({"stats", "bogus"}).code, 2);
}

TEST_F(CliTest, UniformitySmallRun) {
  const CliRun u = run_cli({"stats", "uniformity", "--n", "2", "--M", "3", "--Q", "3", "--trials", "20000", "--replicates",
                     "20", "--seed", "4"});
  ASSERT_EQ(u.code, 0) << u.err;
  const json j = json::parse(u.out);
  EXPECT_TRUE(j["result"].contains("distance"));
  EXPECT_TRUE(j["result"].contains("null_band_99"));
}

TEST_F(CliTest, ConfigMergeRespectsCommandLine) {
  put("cfg.json", R"({"Q": 5, "q": 3, "seed": 1})");
  const CliRun a = run_cli({"stats", "moddist", "--config", path("cfg.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(json::parse(a.out)["delta_exact"], "2/15");
  const CliRun b = run_cli({"stats", "moddist", "--config", path("cfg.json"), "--Q", "6"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(json::parse(b.out)["delta_exact"], "0");
  put("bad.json", "[1, 2]");
  EXPECT_EQ(run_cli({"stats", "moddist", "--config", path("bad.json")}).code, 4);
}

TEST_F(CliTest, EtaSchedule) {
  put("z4.txt", "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
  const CliRun r = run_cli({"eta", "--basis", path("z4.txt"), "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schedule"]["K"], 10);
  EXPECT_EQ(j["schedule"]["candidates"].size(), 11u);
  EXPECT_TRUE(j.contains("smoothing"));
  EXPECT_TRUE(j.contains("selected"));
}

TEST_F(CliTest, MissingSeedIsReported) {
  const CliRun r = run_cli({"stats", "moddist", "--Q", "5", "--q", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("note: no --seed given"), std::string::npos);
  EXPECT_TRUE(json::parse(r.out)["seed"].is_number_unsigned());
}
