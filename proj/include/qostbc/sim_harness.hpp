#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qostbc/precoder.hpp"
#include "qostbc/types.hpp"

namespace qostbc {

struct SimConfig {
  int M_actual = 2;
  int n = 1;
  std::string mod = "qpsk";
  int N = 1;  // receive antennas
  std::vector<double> snr_db;
  std::uint64_t trials = 0;  // blocks per SNR point
  std::uint64_t seed = 0;
  bool baseline = false;
  bool early_stop = false;
  int workers = 1;
  std::vector<double> angles;  // rotation phases, empty = none
  std::string out_path;
};

struct SerPoint {
  double snr_db = 0.0;
  std::uint64_t trials = 0;  // blocks actually simulated
  std::uint64_t errors = 0;  // symbol errors
  double ser = 0.0;          // errors / (trials * M)
  double stderr_ = 0.0;      // sqrt(ser * (1 - ser) / (trials * M))
};

SerPoint make_ser_point(double snr_db, std::uint64_t trials,
                        std::uint64_t errors, int M);

// Monte Carlo sweep of the constructed code through the ML receiver.
// Per trial: fresh Rayleigh H, fresh symbols, encode, add noise, decode,
// count symbol errors. Deterministic for a fixed seed, independent of
// `workers`: every trial draws from its own (seed, point, trial) substream
// and trials aggregate in fixed 1024-trial chunks. With early_stop, a point
// ends at the first chunk boundary where accumulated errors reach 200.
std::vector<SerPoint> run_ser_sweep(const SimConfig& config);

// Same harness through the ideal orthogonal benchmark (equivalent scalar
// channel ||H||_F). Shares the per-trial substreams with run_ser_sweep, so
// both sweeps see identical channels and symbols.
std::vector<SerPoint> run_baseline_sweep(const SimConfig& config);

struct TradeoffRow {
  int n = 0;
  int group = 0;      // symbols decoded jointly
  int diversity = 0;  // closed-form diversity order
};

// (n, group size, diversity) for n = 1 .. ceil(log2 M).
std::vector<TradeoffRow> tradeoff_table(int M_actual);

std::string format_csv(const std::vector<SerPoint>& points);
void write_csv(const std::vector<SerPoint>& points, const std::string& path);

// ---- verification suite ----------------------------------------------

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;  // worst observed residual
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

// Pluggable equivalent-channel builder so tests can inject a corrupted
// construction (default: the extraction convention).
using EquivalentChannelProvider =
    std::function<CMat(const CVec& h, int partition)>;

// Runs every algebraic property check over random channels/symbols at the
// given sizes: partition orthogonality, the defining linear-model relation,
// Gram realness, eigenvector pairing across partitions, Gram cross-pairing,
// channel independence of the eigenvector matrices, the determinant
// factorization and product formula, the eigenvalue identification, code
// additivity/energy identities, and the SVD kernel contract.
VerificationReport run_verification_suite(
    std::uint64_t seed, const std::vector<int>& sizes, int samples,
    const EquivalentChannelProvider& provider = {});

}  // namespace qostbc
