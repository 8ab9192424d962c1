// qostbc: command-line front end for the recursive quasi-orthogonal
// space-time block code library.
//
// Subcommands:
//   info    structural dump for a given code size (partitions, conjugation
//           mask, codeword layout, eigenvector matrices, tradeoff table)
//   verify  run the numerical property suite; exit 1 if any check fails
//   rotate  grid-search the constellation rotation for a code configuration
//   ser     Monte Carlo symbol-error-rate sweep, CSV output
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qostbc/code_construction.hpp"
#include "qostbc/eigenstructure.hpp"
#include "qostbc/precoder.hpp"
#include "qostbc/sim_harness.hpp"

namespace {

using qostbc::invalid_input;

void print_matrix(const qostbc::RMat& A) {
  for (int r = 0; r < A.rows(); ++r) {
    for (int c = 0; c < A.cols(); ++c) std::printf(" % 8.4f", A(r, c));
    std::printf("\n");
  }
}

std::string one_based(const std::vector<int>& idx) {
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i)
    os << (i ? " " : "") << idx[i] + 1;
  return os.str();
}

// Fold a --config file into the argument list before parsing. Each
// `key = value` line becomes `--key=value` unless that flag already appears
// on the command line, so explicit flags always win. Done by hand because
// the argument parser only honors set_config on the top-level command, not
// on subcommands.
std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream f(path);
  if (!f) throw invalid_input("cannot read config file: " + path);
  const auto strip = [](const std::string& t) {
    const auto b = t.find_first_not_of(" \t\r");
    const auto e = t.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  std::string line;
  while (std::getline(f, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw invalid_input("config line is not key=value: " + line);
    const std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') &&
        val.back() == val.front())
      val = val.substr(1, val.size() - 2);
    if (key.empty()) throw invalid_input("config line has empty key: " + line);
    bool given = false;
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) given = true;
    if (!given) args.push_back("--" + key + "=" + val);
  }
  return args;
}

// "start:step:stop" -> inclusive list of SNR points
std::vector<double> parse_snr_range(const std::string& text) {
  double start = 0, step = 0, stop = 0;
  char extra = 0;
  const int got =
      std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &extra);
  if (got != 3) throw invalid_input("--snr-db expects start:step:stop");
  if (!(step > 0)) throw invalid_input("--snr-db step must be > 0");
  if (stop < start - 1e-12) throw invalid_input("--snr-db stop < start");
  std::vector<double> out;
  for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
  return out;
}

int run_info(int M) {
  if (M < 2) throw invalid_input("info: --M must be >= 2");
  const int Mp = qostbc::next_power_of_two(M);
  std::printf("code size M = %d", Mp);
  if (Mp != M)
    std::printf(" (punctured to %d transmit antennas: trailing %d column%s "
                "deleted)",
                M, Mp - M, Mp - M == 1 ? "" : "s");
  std::printf("\n\n");

  const auto parts = qostbc::partition_indices(Mp);
  std::printf("partition 1 (symbols, 1-based): {%s}\n",
              one_based(parts.p1).c_str());
  std::printf("partition 2 (symbols, 1-based): {%s}\n",
              one_based(parts.p2).c_str());
  std::printf("partition 1 symbol order:        %s\n",
              one_based(parts.order1).c_str());
  std::printf("partition 2 symbol order:        %s\n",
              one_based(parts.order2).c_str());

  const auto mask = qostbc::conjugation_mask(Mp);
  std::string mask_str;
  std::string conj_rows;
  for (int r = 0; r < Mp; ++r) {
    mask_str += mask[r] ? 'T' : 'F';
    if (mask[r]) conj_rows += (conj_rows.empty() ? "" : " ") +
                              std::to_string(r + 1);
  }
  std::printf("receiver conjugation mask:       %s (rows %s)\n\n",
              mask_str.c_str(), conj_rows.c_str());

  std::printf("codeword layout (rows = time, columns = antennas):\n");
  const auto layout = qostbc::code_layout(Mp);
  for (int r = 0; r < Mp; ++r) {
    std::printf("  ");
    for (int c = 0; c < Mp; ++c) {
      std::printf("%ss%d%s%*s", layout.sign(r, c) < 0 ? "-" : " ",
                  layout.index(r, c) + 1, layout.conjugated[r][c] ? "*" : " ",
                  layout.index(r, c) + 1 < 10 ? 1 : 0, "");
    }
    std::printf("\n");
  }
  std::printf("\n");

  std::printf("eigenvector matrix, partition 1 (%dx%d):\n", Mp / 2, Mp / 2);
  print_matrix(qostbc::eigvec_matrix(Mp, 1));
  const qostbc::RMat W2 = qostbc::eigvec_matrix(Mp, 2);
  std::printf("eigenvector matrix, partition 2 (%dx%d):\n",
              static_cast<int>(W2.rows()), static_cast<int>(W2.cols()));
  print_matrix(W2);
  std::printf("\n");

  std::printf("decoding-complexity / diversity tradeoff (M = %d):\n", M);
  std::printf("  %2s %6s %10s\n", "n", "group", "diversity");
  for (const auto& row : qostbc::tradeoff_table(M))
    std::printf("  %2d %6d %10d\n", row.n, row.group, row.diversity);
  return 0;
}

int run_verify(const std::vector<int>& sizes, int samples,
               std::uint64_t seed) {
  std::printf("property suite: sizes =");
  for (int M : sizes) std::printf(" %d", M);
  std::printf(", samples = %d, seed = %" PRIu64 "\n\n", samples, seed);

  const auto report = qostbc::run_verification_suite(seed, sizes, samples);
  for (const auto& c : report.checks)
    std::printf("[%s] %-26s worst %.3e   tol %.1e\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst,
                c.tolerance);
  int failed = 0;
  for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
  if (failed == 0) {
    std::printf("\nall %zu checks passed\n", report.checks.size());
    return 0;
  }
  std::printf("\n%d of %zu checks FAILED\n", failed, report.checks.size());
  return 1;
}

int run_rotate(int M, int n, const std::string& mod, int grid) {
  const auto res =
      qostbc::optimize_rotation(M, n, qostbc::constellation_by_name(mod), grid);
  std::printf("grid points searched: %d\n", grid);
  std::printf("theta_hat: %.15g rad (%.6g deg)\n", res.theta_hat,
              res.theta_hat * 180.0 / M_PI);
  std::printf("angles (rad):");
  for (double a : res.angles) std::printf(" %.15g", a);
  std::printf("\n");
  std::printf("min |det| over group differences: %.12g\n",
              res.report.min_abs_det);
  std::printf("min rank of difference Gram:      %d\n", res.report.min_rank);
  std::printf("claimed diversity order:          %d\n", res.report.claimed);
  std::printf("argmin difference vector:\n");
  for (int i = 0; i < res.report.argmin_diff.size(); ++i) {
    const qostbc::cxd v = res.report.argmin_diff(i);
    std::printf("  s%-2d %+.9f %+.9fj\n", i + 1, v.real(), v.imag());
  }
  return 0;
}

int run_ser(const qostbc::SimConfig& cfg) {
  std::printf("M = %d", cfg.M_actual);
  const int Mp = qostbc::next_power_of_two(cfg.M_actual);
  if (Mp != cfg.M_actual) std::printf(" (parent code %d)", Mp);
  if (cfg.baseline)
    std::printf(", ideal orthogonal baseline");
  else
    std::printf(", n = %d (group size %d)", cfg.n, Mp >> cfg.n);
  std::printf(", %s, rx = %d, trials/point = %" PRIu64 ", seed = %" PRIu64
              ", workers = %d%s\n\n",
              cfg.mod.c_str(), cfg.N, cfg.trials, cfg.seed, cfg.workers,
              cfg.early_stop ? ", early-stop" : "");

  const auto points = cfg.baseline ? qostbc::run_baseline_sweep(cfg)
                                   : qostbc::run_ser_sweep(cfg);
  std::printf("%8s %12s %10s %14s %12s\n", "snr_db", "trials", "errors", "ser",
              "stderr");
  for (const auto& p : points)
    std::printf("%8.2f %12" PRIu64 " %10" PRIu64 " %14.6e %12.3e\n", p.snr_db,
                p.trials, p.errors, p.ser, p.stderr_);
  qostbc::write_csv(points, cfg.out_path);
  std::printf("\nwrote %s\n", cfg.out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recursive quasi-orthogonal space-time block codes"};
  app.require_subcommand(1);
  std::string config_path;  // consumed by merge_config_args before parsing
  const char* config_help = "file of key=value defaults (flags override)";

  // --- info ---
  auto* info = app.add_subcommand("info", "print code structure for a size");
  int info_M = 0;
  info->add_option("--M", info_M, "number of transmit antennas")->required();
  info->add_option("--config", config_path, config_help);

  // --- verify ---
  auto* verify =
      app.add_subcommand("verify", "run the numerical property suite");
  std::vector<int> v_sizes{2, 4, 8, 16};
  int v_samples = 1000;
  std::uint64_t v_seed = 1;
  verify->add_option("--sizes", v_sizes, "code sizes (powers of two)")
      ->delimiter(',');
  verify->add_option("--samples", v_samples, "random channels per size");
  verify->add_option("--seed", v_seed, "RNG seed");
  verify->add_option("--config", config_path, config_help);

  // --- rotate ---
  auto* rotate =
      app.add_subcommand("rotate", "grid-search the constellation rotation");
  int r_M = 0, r_n = 1, r_grid = 180;
  std::string r_mod = "qpsk";
  rotate->add_option("--M", r_M, "number of transmit antennas")->required();
  rotate->add_option("--n", r_n, "decoding granularity (group size M/2^n)");
  rotate->add_option("--mod", r_mod, "constellation name");
  rotate->add_option("--grid", r_grid, "grid points over (0, pi/2]");
  rotate->add_option("--config", config_path, config_help);

  // --- ser ---
  auto* ser = app.add_subcommand("ser", "Monte Carlo symbol error rate sweep");
  qostbc::SimConfig cfg;
  std::string snr_text;
  double theta = 0.0;
  ser->add_option("--M", cfg.M_actual, "number of transmit antennas")
      ->required();
  ser->add_option("--n", cfg.n, "decoding granularity (group size M/2^n)");
  ser->add_option("--mod", cfg.mod, "constellation name");
  ser->add_option("--rx", cfg.N, "number of receive antennas");
  ser->add_option("--snr-db", snr_text, "SNR sweep start:step:stop in dB")
      ->required();
  ser->add_option("--trials", cfg.trials, "codeword trials per SNR point")
      ->required();
  ser->add_option("--seed", cfg.seed, "RNG seed")->required();
  ser->add_option("--out", cfg.out_path, "output CSV path")->required();
  auto* theta_opt = ser->add_option(
      "--theta", theta, "rotation step: symbol k of a group gets angle k*theta");
  ser->add_flag("--baseline", cfg.baseline,
                "simulate the ideal orthogonal reference instead");
  ser->add_flag("--early-stop", cfg.early_stop,
                "stop a point after 200 accumulated errors");
  ser->add_option("--workers", cfg.workers, "worker threads");
  ser->add_option("--config", config_path, config_help);

  std::vector<std::string> args;
  try {
    args = merge_config_args(argc, argv);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());  // parse() consumes from the back

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*info) return run_info(info_M);
    if (*verify) return run_verify(v_sizes, v_samples, v_seed);
    if (*rotate) return run_rotate(r_M, r_n, r_mod, r_grid);
    if (*ser) {
      cfg.snr_db = parse_snr_range(snr_text);
      if (theta_opt->count() > 0) {
        const int g = qostbc::next_power_of_two(cfg.M_actual) >> cfg.n;
        if (g < 1) throw invalid_input("--theta: n too large for this M");
        cfg.angles.resize(g);
        for (int k = 0; k < g; ++k) cfg.angles[k] = k * theta;
      }
      return run_ser(cfg);
    }
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
