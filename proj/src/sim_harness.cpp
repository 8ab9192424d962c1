#include "qostbc/sim_harness.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "qostbc/transceiver.hpp"

namespace qostbc {

SerPoint make_ser_point(double snr_db, std::uint64_t trials,
                        std::uint64_t errors, int M) {
  SerPoint p;
  p.snr_db = snr_db;
  p.trials = trials;
  p.errors = errors;
  const double den = static_cast<double>(trials) * M;
  p.ser = den > 0 ? static_cast<double>(errors) / den : 0.0;
  p.stderr_ = den > 0 ? std::sqrt(p.ser * (1.0 - p.ser) / den) : 0.0;
  return p;
}

namespace {

constexpr std::uint64_t kChunk = 1024;       // trials per aggregation unit
constexpr std::uint64_t kEarlyStopErrors = 200;

// Symbol errors for one trial. Every random draw comes from the trial's own
// substream, in a fixed order (symbols, channel, noise), so the result is a
// pure function of (seed, point index, trial index).
std::uint64_t run_trial(const LinkContext& ctx, double rho, int N,
                        std::uint64_t seed, std::uint64_t point_idx,
                        std::uint64_t trial, bool baseline, Workspace& ws,
                        std::vector<int>& idx, std::vector<int>& decided) {
  const int M = ctx.spec.M;
  const int M_actual = ctx.spec.M_actual;
  const int q = static_cast<int>(ctx.spec.constellation.points.size());
  Rng rng = Rng::substream(seed, point_idx, trial);

  idx.resize(M);
  for (int k = 0; k < M; ++k) idx[k] = static_cast<int>(rng.uniform_int(q));

  // Punctured antennas appear as zero channel rows on the parent design.
  CMat H = CMat::Zero(M, N);
  for (int nn = 0; nn < N; ++nn)
    for (int mm = 0; mm < M_actual; ++mm) H(mm, nn) = rng.cgaussian();

  const CVec c = modulate(idx, ctx.spec.constellation);
  ChannelRealization ch{H, rho};

  if (baseline) {
    decided = ideal_orthogonal_reference(c, H, rho, M, ctx.spec.constellation,
                                         rng);
  } else {
    const Codeword cw = encode(c, ctx);
    const CMat X = channel_apply(cw.G, ch, rng);
    decode_ml(X, ch, ctx, ws, decided);
  }

  std::uint64_t errs = 0;
  for (int k = 0; k < M; ++k)
    if (decided[k] != idx[k]) ++errs;
  return errs;
}

struct PointResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
};

// Trials are aggregated in fixed-size chunks; with early stopping the point
// ends at the first chunk boundary where the error prefix sum reaches the
// threshold. Both rules depend only on per-chunk results, never on thread
// scheduling, so any worker count produces identical output.
PointResult simulate_point(const LinkContext& ctx, double rho, int N,
                           std::uint64_t trials, std::uint64_t seed,
                           std::uint64_t point_idx, int workers,
                           bool early_stop, bool baseline) {
  const std::uint64_t n_chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> chunk_errors(n_chunks, 0);
  std::vector<char> chunk_done(n_chunks, 0);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> stop_at{n_chunks};  // last chunk index included
  std::mutex prefix_mutex;
  std::uint64_t prefix_end = 0;  // chunks [0, prefix_end) done
  std::uint64_t prefix_errors = 0;

  auto worker = [&] {
    Workspace ws;
    std::vector<int> idx, decided;
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= n_chunks || i > stop_at.load()) break;
      const std::uint64_t lo = i * kChunk;
      const std::uint64_t hi = std::min(trials, lo + kChunk);
      std::uint64_t errs = 0;
      for (std::uint64_t t = lo; t < hi; ++t)
        errs += run_trial(ctx, rho, N, seed, point_idx, t, baseline, ws, idx,
                          decided);
      if (!early_stop) {
        chunk_errors[i] = errs;
        continue;
      }
      std::lock_guard<std::mutex> lock(prefix_mutex);
      chunk_errors[i] = errs;
      chunk_done[i] = 1;
      while (prefix_end < n_chunks && chunk_done[prefix_end]) {
        prefix_errors += chunk_errors[prefix_end];
        if (prefix_errors >= kEarlyStopErrors &&
            prefix_end < stop_at.load()) {
          stop_at.store(prefix_end);
        }
        ++prefix_end;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::uint64_t limit =
      std::min<std::uint64_t>(n_chunks == 0 ? 0 : n_chunks - 1, stop_at.load());
  PointResult res;
  for (std::uint64_t i = 0; i <= limit && n_chunks > 0; ++i)
    res.errors += chunk_errors[i];
  res.trials = n_chunks == 0 ? 0 : std::min(trials, (limit + 1) * kChunk);
  return res;
}

std::vector<SerPoint> run_sweep(const SimConfig& config, bool baseline) {
  require(config.trials >= 1, "sweep: need at least one trial");
  require(!config.snr_db.empty(), "sweep: need at least one SNR point");
  require(config.workers >= 1, "sweep: need at least one worker");
  require(config.N >= 1, "sweep: need at least one receive antenna");

  const Constellation& constellation = constellation_by_name(config.mod);
  const CodeSpec spec =
      make_code_spec(config.M_actual, config.n, config.angles, constellation);
  const LinkContext ctx(spec);

  std::vector<SerPoint> points;
  points.reserve(config.snr_db.size());
  for (size_t p = 0; p < config.snr_db.size(); ++p) {
    const double rho = std::pow(10.0, config.snr_db[p] / 10.0);
    const PointResult r =
        simulate_point(ctx, rho, config.N, config.trials, config.seed, p,
                       config.workers, config.early_stop, baseline);
    points.push_back(make_ser_point(config.snr_db[p], r.trials, r.errors,
                                    spec.M));
  }
  return points;
}

}  // namespace

std::vector<SerPoint> run_ser_sweep(const SimConfig& config) {
  return run_sweep(config, false);
}

std::vector<SerPoint> run_baseline_sweep(const SimConfig& config) {
  return run_sweep(config, true);
}

std::vector<TradeoffRow> tradeoff_table(int M_actual) {
  require(M_actual >= 2, "tradeoff_table: need at least 2 antennas");
  int ceil_log = 0;
  while ((1 << ceil_log) < M_actual) ++ceil_log;
  std::vector<TradeoffRow> rows;
  for (int n = 1; n <= ceil_log; ++n)
    rows.push_back({n, 1 << (ceil_log - n), diversity_order(M_actual, n)});
  return rows;
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<SerPoint>& points) {
  std::string out = "snr_db,trials,errors,ser,stderr\n";
  for (const SerPoint& p : points) {
    out += fmt6(p.snr_db);
    out += ',';
    out += std::to_string(p.trials);
    out += ',';
    out += std::to_string(p.errors);
    out += ',';
    out += fmt6(p.ser);
    out += ',';
    out += fmt6(p.stderr_);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SerPoint>& points, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  f << format_csv(points);
  if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace qostbc
