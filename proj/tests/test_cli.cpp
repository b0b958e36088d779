#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() / ("mucfc-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliFixture() { fs::remove_all(dir); }

  CommandResult run(const std::string& args) const {
    const fs::path log = dir / "cmd.log";
    const std::string cmd =
        std::string(MUCFC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    res.output = buf.str();
    return res;
  }

  std::string slurp(const fs::path& p) const {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

}  // namespace

TEST_CASE("bare invocation is a usage error") {
  CliFixture cli;
  const CommandResult res = cli.run("");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("Usage") != std::string::npos);
}

TEST_CASE("missing required flag is a usage error") {
  CliFixture cli;
  // simulate requires --seed
  const CommandResult res = cli.run("simulate --uavs 6 --tasks 3");
  CHECK(res.exit_code == 1);
}

TEST_CASE("unknown option is a usage error") {
  CliFixture cli;
  const CommandResult res = cli.run("simulate --seed 1 --frobnicate");
  CHECK(res.exit_code == 1);
}

TEST_CASE("simulate writes a monotone trace and replays byte-identically") {
  CliFixture cli;
  const fs::path trace = cli.dir / "t.csv";
  const std::string cmd = "simulate --uavs 10 --tasks 5 --r 0.006 --order marginal "
                          "--seed 1 --trace " + trace.string();
  const CommandResult first = cli.run(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output.find("total utility:") != std::string::npos);

  const std::string trace_text = cli.slurp(trace);
  std::istringstream in(trace_text);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "iteration,uav,from_task,to_task,accepted,potential,total_utility");
  double prev = -1e300;
  int accepted_rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    for (int k = 0; k < 5; ++k) std::getline(row, field, ',');
    const bool accepted = field == "1";
    std::getline(row, field, ',');
    const double pot = std::stod(field);
    if (accepted) {
      CHECK(pot > prev);
      ++accepted_rows;
    }
    prev = pot;
  }
  CHECK(accepted_rows > 0);

  const CommandResult second = cli.run(cmd);
  REQUIRE(second.exit_code == 0);
  CHECK(second.output == first.output);
  CHECK(cli.slurp(trace) == trace_text);
}

TEST_CASE("simulate replays a saved scenario deterministically") {
  CliFixture cli;
  const fs::path scenario = cli.dir / "s.json";
  REQUIRE(cli.run("simulate --uavs 8 --tasks 4 --seed 9 --save-scenario " +
                  scenario.string()).exit_code == 0);
  REQUIRE(fs::exists(scenario));

  const std::string cmd = "simulate --scenario " + scenario.string() +
                          " --order selfish --seed 7";
  const CommandResult a = cli.run(cmd);
  const CommandResult b = cli.run(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("unreadable scenario file is an io error") {
  CliFixture cli;
  const CommandResult res =
      cli.run("simulate --scenario /no/such/file.json --seed 1");
  CHECK(res.exit_code == 2);
}

TEST_CASE("malformed scenario file is an io error") {
  CliFixture cli;
  const fs::path bad = cli.dir / "bad.json";
  std::ofstream(bad) << "{\"seed\": 1, \"tasks\": [], \"uavs\": [], \"oops\": true}";
  const CommandResult res = cli.run("simulate --scenario " + bad.string() + " --seed 1");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("oops") != std::string::npos);
}

TEST_CASE("experiment presets emit deterministic csv") {
  CliFixture cli;
  const fs::path out = cli.dir / "exp.csv";
  const std::string cmd = "experiment --uavs-grid 6 --tasks-grid 3 --r-grid 0.006 "
                          "--rounds 2 --seed 42 --out " + out.string();
  REQUIRE(cli.run(cmd).exit_code == 0);
  const std::string first = cli.slurp(out);
  CHECK(first.find("r,order,n_uavs,n_tasks,rounds,") == 0);
  REQUIRE(cli.run(cmd).exit_code == 0);
  CHECK(cli.slurp(out) == first);
}

TEST_CASE("experiment fig6 emits per-iteration curves") {
  CliFixture cli;
  const fs::path out = cli.dir / "fig6.csv";
  const CommandResult res =
      cli.run("experiment fig6 --rounds 2 --seed 1 --out " + out.string());
  REQUIRE(res.exit_code == 0);
  const std::string text = cli.slurp(out);
  CHECK(text.find("order,iteration,mean_total_utility") == 0);
  CHECK(text.find("marginal,0,") != std::string::npos);
}

TEST_CASE("experiment rejects unknown presets and empty grids") {
  CliFixture cli;
  const fs::path out = cli.dir / "x.csv";
  CHECK(cli.run("experiment fig9 --seed 1 --out " + out.string()).exit_code == 1);
  CHECK(cli.run("experiment --seed 1 --out " + out.string()).exit_code == 1);
  CHECK(cli.run("experiment --uavs-grid 3 --tasks-grid 6 --seed 1 --out " +
                out.string()).exit_code == 1);
}

TEST_CASE("validate passes on the real model") {
  CliFixture cli;
  const CommandResult res = cli.run("validate --suite shapley --trials 500");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("500/500") != std::string::npos);
}

TEST_CASE("validate rejects unknown suites") {
  CliFixture cli;
  CHECK(cli.run("validate --suite nonsense").exit_code == 1);
}
