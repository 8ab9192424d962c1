#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command line. Each test shells out to
// the real binary (path injected by the build) and inspects exit status,
// stdout, and produced artifacts.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/qostbc_cli_out.txt";
  const std::string cmd =
      std::string(QOSTBC_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(out_path);
  std::stringstream ss;
  ss << f.rdbuf();
  r.output = ss.str();
  std::remove(out_path.c_str());
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("info prints the structural facts") {
  const auto r = run_cli("info --M 8");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "{1 4 6 7}"));
  CHECK(contains(r.output, "{2 3 5 8}"));
  CHECK(contains(r.output, "FTTFTFFT"));
  CHECK(contains(r.output, "-s2*"));  // layout rendering
  CHECK(contains(r.output, "tradeoff"));

  const auto punct = run_cli("info --M 6");
  CHECK(punct.exit_code == 0);
  CHECK(contains(punct.output, "punctured"));
}

TEST_CASE("verify exits zero and reports every check") {
  const auto r = run_cli("verify --sizes 2,4 --samples 30 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "[PASS] defining_relation"));
  CHECK(contains(r.output, "[PASS] w_leakage"));
  CHECK(contains(r.output, "checks passed"));
  CHECK(!contains(r.output, "FAIL"));
}

TEST_CASE("rotate reports the plateau angle") {
  const auto r = run_cli("rotate --M 4 --n 1 --mod qpsk --grid 12");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "30 deg"));
  CHECK(contains(r.output, "min |det| over group differences: 4"));
  CHECK(contains(r.output, "min rank of difference Gram:      4"));
}

TEST_CASE("ser writes the advertised csv") {
  const std::string csv = "/tmp/qostbc_cli_ser.csv";
  const auto r = run_cli(
      "ser --M 2 --n 1 --mod qpsk --rx 1 --snr-db 6:4:10 --trials 2000 "
      "--seed 3 --out " + csv);
  CHECK(r.exit_code == 0);
  const std::string text = slurp(csv);
  CHECK(contains(text, "snr_db,trials,errors,ser,stderr\n"));
  CHECK(contains(text, "\n6,2000,"));
  CHECK(contains(text, "\n10,2000,"));
  std::remove(csv.c_str());
}

TEST_CASE("ser bytes do not depend on the worker count") {
  const std::string a = "/tmp/qostbc_cli_w1.csv";
  const std::string b = "/tmp/qostbc_cli_w5.csv";
  const std::string common =
      "ser --M 4 --n 1 --mod qpsk --rx 1 --theta 0.5235987755982988 "
      "--snr-db 8:2:10 --trials 4000 --seed 11 ";
  CHECK(run_cli(common + "--workers 1 --out " + a).exit_code == 0);
  CHECK(run_cli(common + "--workers 5 --out " + b).exit_code == 0);
  const std::string ta = slurp(a), tb = slurp(b);
  CHECK(ta == tb);
  CHECK(!ta.empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("config file supplies defaults, flags override") {
  const std::string cfg_path = "/tmp/qostbc_cli.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "M = 2\n"
        << "n = 1\n"
        << "mod = qpsk\n"
        << "rx = 1\n"
        << "snr-db = 6:2:6\n"
        << "trials = 1024\n"
        << "seed = 9\n"
        << "out = /tmp/qostbc_cli_cfg.csv\n";
  }
  const auto r = run_cli("ser --config " + cfg_path);
  CHECK(r.exit_code == 0);
  CHECK(contains(slurp("/tmp/qostbc_cli_cfg.csv"), "6,1024,"));

  // explicit flag wins over the config value
  const auto r2 = run_cli("ser --config " + cfg_path + " --trials 512");
  CHECK(r2.exit_code == 0);
  CHECK(contains(slurp("/tmp/qostbc_cli_cfg.csv"), "6,512,"));
  std::remove(cfg_path.c_str());
  std::remove("/tmp/qostbc_cli_cfg.csv");
}

TEST_CASE("invalid input exits 2 with a message") {
  CHECK(run_cli("ser --M 5 --n 9 --mod qpsk --rx 1 --snr-db 1:1:2 "
                "--trials 10 --seed 1 --out /tmp/x.csv").exit_code == 2);
  CHECK(run_cli("ser --M 4 --n 1 --mod okqam --rx 1 --snr-db 1:1:2 "
                "--trials 10 --seed 1 --out /tmp/x.csv").exit_code == 2);
  const auto bad_range =
      run_cli("ser --M 2 --n 1 --mod qpsk --rx 1 --snr-db 10:-1:4 "
              "--trials 10 --seed 1 --out /tmp/x.csv");
  CHECK(bad_range.exit_code == 2);
  CHECK(contains(bad_range.output, "step"));
  CHECK(run_cli("rotate --M 4 --n 1 --grid 1").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("info").exit_code == 2);  // --M is required
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("ser --help").exit_code == 0);
}

}  // TEST_SUITE
