#pragma once

#include <cstdint>
#include <vector>

#include "qostbc/constellation.hpp"
#include "qostbc/types.hpp"

namespace qostbc {

// Everything defining one code instance. M is the internal power-of-2
// antenna count; M_actual < M means the trailing columns are punctured.
// n sets the ML decoding granularity: symbols are searched in groups of
// g = M / 2^n per partition (n = 1: one group of M/2; n = log2 M: single
// symbols).
struct CodeSpec {
  int M_actual = 2;
  int M = 2;
  int n = 1;
  std::vector<double> angles;  // per-position rotation phases, angles[0] == 0
  Constellation constellation;
  std::vector<int> deleted_columns;  // 0-based, trailing

  int group_size() const { return M >> n; }
  int groups_per_partition() const { return (M / 2) / group_size(); }
};

// Validates and fills in derived fields. Empty angle list means all-zero
// angles; otherwise the list must have group_size entries with angles[0]=0.
CodeSpec make_code_spec(int M_actual, int n, std::vector<double> angles,
                        const Constellation& constellation);

// The g x g in-group map A = W_{2g,1} * diag(exp(j*angles)) applied to every
// group in both partitions (scalar 1 when g = 1).
CMat group_block(const CodeSpec& spec);

// The M x M unitary precoder R with s = R * c. Per partition i the induced
// map on canonical symbol vectors is
//   v_i(s) = W_{M,i} * blockdiag(A, ..., A) * v_i(c),
// so the receiver-side statistic W^T v_i(s) is block-diagonal per group and
// the ML metric separates into independent g-symbol searches.
CMat build_precoder(const CodeSpec& spec);

// min(M_actual, 2^(ceil(log2 M_actual) - n + 1))
int diversity_order(int M_actual, int n);

struct DiversityReport {
  int min_rank = 0;
  double min_abs_det = 0.0;
  CVec argmin_diff;  // information-vector difference achieving the minimum
  int claimed = 0;   // closed-form diversity order for comparison
};

// Brute-force rank/determinant certification over codeword differences.
// Because the determinant of a partition code factors into independent
// per-group terms (and determinants of sums of PSD Grams only grow), the
// minimum over ALL nonzero differences is attained by differences confined
// to a single group; enumerating the first group of each partition covers
// everything. Refuses when the enumeration would exceed `cap` evaluations.
DiversityReport min_codeword_det(const CodeSpec& spec,
                                 std::uint64_t cap = 10'000'000);

struct RotationResult {
  std::vector<double> angles;  // theta_k = (k-1) * theta_hat
  double theta_hat = 0.0;
  double min_abs_det = 0.0;
  DiversityReport report;  // at the chosen angles
};

// Single-parameter grid search of theta_hat over (0, pi/2], grid_size points,
// maximizing min_codeword_det. Deterministic: a candidate replaces the
// incumbent only when it improves by more than 1e-9 relative, so flat optima
// resolve to the lowest angle.
RotationResult optimize_rotation(int M, int n,
                                 const Constellation& constellation,
                                 int grid_size);

}  // namespace qostbc
