#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "augpulse/cli/commands.hpp"
#include "support.hpp"

using namespace augpulse;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "augpulse");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++n;
  return n - 1;  // column header
}

std::string tmp_dir() {
  const auto d = std::filesystem::temp_directory_path() / "augpulse_cli_test";
  std::filesystem::create_directories(d);
  return d.string();
}

}  // namespace

TEST(Cli, CompareX) {
  const CliRun r = run({"compile", fixtures::program("x.qasm"), "--backend", bundled_backend_path(), "--compare"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("standard: 320 dt, optimized: 160 dt"), std::string::npos) << r.out;
}

TEST(Cli, CompareOpenCnot) {
  const CliRun r = run({"compile", fixtures::program("opencnot.qasm"), "--compare"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1984 dt / 1504 dt"), std::string::npos) << r.out;
}

TEST(Cli, WritesScheduleAndReport) {
  const std::string dir = tmp_dir();
  const CliRun r = run({"compile", fixtures::program("h2.qasm"), "--out", dir});
  ASSERT_EQ(r.code, 0) << r.err;
  const PulseSchedule s = load_schedule(dir + "/h2.optimized.schedule.json");
  EXPECT_EQ(s.duration(), 1122);
  EXPECT_TRUE(std::filesystem::exists(dir + "/h2.optimized.report.json"));
}

TEST(Cli, MissingBackendNamesThePath) {
  const CliRun r = run({"compile", fixtures::program("x.qasm"), "--backend", "/no/such/backend.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/no/such/backend.json"), std::string::npos);
}

TEST(Cli, BadProgramIsAUserError) {
  const std::string path = tmp_dir() + "/bad.qasm";
  std::ofstream(path) << "qubits 1\nbadgate q[0]\n";
  const CliRun r = run({"compile", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, UnknownFlagsAndMissingSubcommand) {
  EXPECT_EQ(run({"compile", fixtures::program("x.qasm"), "--frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"rb", "--kmax", "seven"}).code, 1);
  EXPECT_EQ(run({"sweep", "--noise", "maybe"}).code, 1);
}

TEST(Cli, EverySubcommandHasHelp) {
  for (const char* sub : {"compile", "costs", "simulate", "sweep", "rb", "counter", "calibrate"}) {
    const CliRun r = run({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("--help"), std::string::npos) << sub;
  }
  const CliRun r = run({"rb", "--help"});
  for (const char* flag : {"--kmax", "--seqs", "--seed", "--noise", "--shots", "--jobs", "--out"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
}

TEST(Cli, Costs) {
  const CliRun r = run({"costs", "--verify", "--format", "csv", "--strict"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("gate,CNOT,CR90,iSWAP,sqrt_iSWAP,CR(theta)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("ZZ,2,2,2,1,1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("SWAP,3,3,3,1.5,3"), std::string::npos);
  EXPECT_NE(r.err.find("20 decompositions"), std::string::npos) << r.err;
}

TEST(Cli, SweepGridAndDeterminism) {
  const CliRun a = run({"sweep", "--points", "41"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out.rfind("# model_hash=", 0), 0u);
  EXPECT_NE(a.out.find("theta_deg,x,y,z,p2\n"), std::string::npos);
  EXPECT_EQ(data_rows(a.out), 41);
  EXPECT_NE(a.out.find("\n4.5,"), std::string::npos);
  EXPECT_NE(a.out.find("\n180,"), std::string::npos);
  EXPECT_EQ(run({"sweep", "--points", "41"}).out, a.out);
}

TEST(Cli, SweepWithShotsIsSeeded) {
  const CliRun a = run({"sweep", "--points", "5", "--shots", "500", "--seed", "3"});
  const CliRun b = run({"sweep", "--points", "5", "--shots", "500", "--seed", "3"});
  const CliRun c = run({"sweep", "--points", "5", "--shots", "500", "--seed", "4"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_NE(a.out.find("seed=3"), std::string::npos);
}

TEST(Cli, CorrectionRoundTrip) {
  const std::string corr = tmp_dir() + "/corr.csv";
  ASSERT_EQ(run({"sweep", "--fit-corrections", corr}).code, 0);
  const CliRun fixed = run({"sweep", "--corrections", corr});
  EXPECT_EQ(fixed.code, 0) << fixed.err;
  EXPECT_EQ(run({"compile", fixtures::program("h2.qasm"), "--corrections", corr}).code, 0);
}

TEST(Cli, Counter) {
  const CliRun r = run({"counter", "--cycles", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cycle,p0\n"), std::string::npos);
  EXPECT_EQ(data_rows(r.out), 60);
  EXPECT_EQ(run({"counter", "--cycles", "60"}).out, r.out);
}

TEST(Cli, RbSmall) {
  const CliRun r = run({"rb", "--kmax", "6", "--seqs", "2", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mode,K,seed,p0\n"), std::string::npos);
  EXPECT_EQ(data_rows(r.out), 3 * 5 * 2);
  EXPECT_NE(r.out.find("# fit optimized f="), std::string::npos);
  EXPECT_NE(r.out.find("optimized_slow,6,1,"), std::string::npos);
  EXPECT_EQ(run({"rb", "--kmax", "6", "--seqs", "2", "--seed", "5"}).out, r.out);
}

TEST(Cli, Simulate) {
  const CliRun r = run({"simulate", fixtures::program("h2.qasm"), "--noise", "on"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("state,probability"), std::string::npos);
  const CliRun s = run({"simulate", fixtures::program("x.qasm"), "--shots", "100"});
  EXPECT_NE(s.out.find("1,100"), std::string::npos) << s.out;
  EXPECT_EQ(run({"simulate", fixtures::program("hidden_zz.qasm")}).code, 1);
}
