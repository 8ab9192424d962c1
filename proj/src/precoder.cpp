#include "qostbc/precoder.hpp"

#include <algorithm>
#include <cmath>

#include "qostbc/code_construction.hpp"
#include "qostbc/eigenstructure.hpp"
#include "qostbc/equivalent_channel.hpp"
#include "qostbc/numerics.hpp"

namespace qostbc {

CodeSpec make_code_spec(int M_actual, int n, std::vector<double> angles,
                        const Constellation& constellation) {
  require(M_actual >= 2, "make_code_spec: need at least 2 antennas");
  CodeSpec spec;
  spec.M_actual = M_actual;
  spec.M = next_power_of_two(M_actual);
  const int levels = int_log2(spec.M);
  require(n >= 1 && n <= levels,
          "make_code_spec: granularity level out of range");
  spec.n = n;
  const int g = spec.M >> n;
  if (angles.empty()) angles.assign(g, 0.0);
  require(static_cast<int>(angles.size()) == g,
          "make_code_spec: need one rotation angle per group position");
  require(std::abs(angles[0]) <= 1e-12,
          "make_code_spec: first rotation angle is pinned to zero");
  spec.angles = std::move(angles);
  spec.constellation = constellation;
  spec.deleted_columns = puncture_columns(spec.M, M_actual);
  return spec;
}

CMat group_block(const CodeSpec& spec) {
  const int g = spec.group_size();
  CMat A(g, g);
  if (g == 1) {
    A(0, 0) = 1.0;
    return A;
  }
  const RMat Wg = eigvec_matrix(2 * g, 1);  // g x g
  for (int c = 0; c < g; ++c) {
    const cxd phase = std::polar(1.0, spec.angles[c]);
    for (int r = 0; r < g; ++r) A(r, c) = Wg(r, c) * phase;
  }
  return A;
}

CMat build_precoder(const CodeSpec& spec) {
  const int M = spec.M;
  const int m = M / 2;
  const int g = spec.group_size();
  const int kg = spec.groups_per_partition();

  const CMat A = group_block(spec);
  CMat B = CMat::Zero(m, m);
  for (int j = 0; j < kg; ++j) B.block(j * g, j * g, g, g) = A;

  const PartitionSet ps = partition_indices(M);
  CMat R = CMat::Zero(M, M);
  for (int part = 1; part <= 2; ++part) {
    const auto& order = part == 1 ? ps.order1 : ps.order2;
    const CMat Wc = eigvec_matrix(M, part).cast<cxd>();
    const CMat Bi = Wc * B;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) R(order[r], order[c]) = Bi(r, c);
  }
  return R;
}

int diversity_order(int M_actual, int n) {
  require(M_actual >= 1 && n >= 1, "diversity_order: bad arguments");
  int ceil_log = 0;
  while ((1 << ceil_log) < M_actual) ++ceil_log;
  const int expo = std::max(ceil_log - n + 1, 0);
  return std::min(M_actual, 1 << expo);
}

namespace {

// Distinct pairwise differences of constellation points, deterministic order.
std::vector<cxd> difference_set(const Constellation& c) {
  std::vector<cxd> diffs;
  for (const cxd& a : c.points)
    for (const cxd& b : c.points) {
      const cxd d = a - b;
      bool seen = false;
      for (const cxd& e : diffs)
        if (e.real() == d.real() && e.imag() == d.imag()) {
          seen = true;
          break;
        }
      if (!seen) diffs.push_back(d);
    }
  std::sort(diffs.begin(), diffs.end(), [](const cxd& a, const cxd& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return diffs;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

DiversityReport min_codeword_det(const CodeSpec& spec, std::uint64_t cap) {
  const int M = spec.M;
  const int g = spec.group_size();
  const std::vector<cxd> diffs = difference_set(spec.constellation);
  const std::uint64_t per_partition = ipow(diffs.size(), g);
  if (2 * per_partition > cap)
    throw search_cap_exceeded(
        "min_codeword_det: " + std::to_string(2 * per_partition) +
        " difference evaluations exceed the cap of " + std::to_string(cap));

  const CMat R = build_precoder(spec);
  const PartitionSet ps = partition_indices(M);
  const CodeLayout layout = code_layout(M);

  DiversityReport rep;
  rep.claimed = diversity_order(spec.M_actual, spec.n);
  rep.min_rank = M + 1;
  rep.min_abs_det = std::numeric_limits<double>::infinity();

  CVec dc(M), ds(M);
  CMat G(M, M);
  for (int part = 1; part <= 2; ++part) {
    const auto& order = part == 1 ? ps.order1 : ps.order2;
    for (std::uint64_t t = 0; t < per_partition; ++t) {
      dc.setZero();
      std::uint64_t rem = t;
      bool all_zero = true;
      for (int k = g - 1; k >= 0; --k) {
        const cxd d = diffs[rem % diffs.size()];
        dc(order[k]) = d;
        rem /= diffs.size();
        all_zero = all_zero && d == cxd(0.0, 0.0);
      }
      if (all_zero) continue;  // 0 sits mid-list in the sorted difference set
      ds.noalias() = R * dc;
      fill_code_matrix(layout, ds, G);
      const double d = std::abs(numerics::det(G));
      const int rk = numerics::rank(G);
      if (d < rep.min_abs_det) {
        rep.min_abs_det = d;
        rep.argmin_diff = dc;
      }
      rep.min_rank = std::min(rep.min_rank, rk);
    }
  }
  return rep;
}

namespace {

// min over nonzero single-group differences of the per-group determinant
// product prod_k (M/2) |(A d)_k|^2 -- the closed-form value of
// |det G[R dc]| when dc is confined to one group and that group is the only
// one excited; identically zero when a partition has more than one group.
double fast_min_group_det(const CodeSpec& spec, const std::vector<cxd>& diffs) {
  if (spec.groups_per_partition() > 1) return 0.0;
  const int g = spec.group_size();
  const double scale = spec.M / 2.0;
  const CMat A = group_block(spec);
  const std::uint64_t total = ipow(diffs.size(), g);
  CVec d(g), w(g);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rem = t;
    bool all_zero = true;
    for (int k = g - 1; k >= 0; --k) {
      d(k) = diffs[rem % diffs.size()];
      rem /= diffs.size();
      all_zero = all_zero && d(k) == cxd(0.0, 0.0);
    }
    if (all_zero) continue;
    w.noalias() = A * d;
    double f = 1.0;
    for (int k = 0; k < g; ++k) f *= scale * std::norm(w(k));
    best = std::min(best, f);
  }
  return best;
}

}  // namespace

RotationResult optimize_rotation(int M, int n,
                                 const Constellation& constellation,
                                 int grid_size) {
  require(grid_size >= 2, "optimize_rotation: grid size must be >= 2");
  CodeSpec probe = make_code_spec(M, n, {}, constellation);
  const int g = probe.group_size();
  const std::vector<cxd> diffs = difference_set(constellation);
  const std::uint64_t per_partition = ipow(diffs.size(), g);
  if (2 * per_partition > 10'000'000ULL)
    throw search_cap_exceeded(
        "optimize_rotation: difference enumeration exceeds the search cap");

  // Flat optima are common (the objective plateaus); require a real
  // improvement before moving so the lowest angle on a plateau wins on
  // every build/compiler.
  double best_obj = -1.0;
  double best_theta = 0.0;
  for (int k = 1; k <= grid_size; ++k) {
    const double theta = k * (M_PI / 2.0) / grid_size;
    std::vector<double> angles(g);
    for (int j = 0; j < g; ++j) angles[j] = j * theta;
    const CodeSpec spec = make_code_spec(M, n, angles, constellation);
    const double obj = fast_min_group_det(spec, diffs);
    if (obj > best_obj + 1e-9 * std::max(1.0, best_obj)) {
      best_obj = obj;
      best_theta = theta;
    }
  }

  RotationResult res;
  res.theta_hat = best_theta;
  res.angles.resize(g);
  for (int j = 0; j < g; ++j) res.angles[j] = j * best_theta;
  const CodeSpec chosen = make_code_spec(M, n, res.angles, constellation);
  res.report = min_codeword_det(chosen);
  res.min_abs_det = res.report.min_abs_det;
  return res;
}

}  // namespace qostbc
