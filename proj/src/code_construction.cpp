#include "qostbc/code_construction.hpp"

#include <algorithm>

namespace qostbc {

namespace {

void check_power_of_two(int M, const char* who) {
  if (!is_power_of_two(M))
    throw invalid_input(std::string(who) + ": size must be a power of 2");
}

void check_partition_id(int partition) {
  if (partition != 1 && partition != 2)
    throw invalid_input("partition id must be 1 or 2");
}

// Membership recursion on 0-based indices:
//   A_{2M,1} = A_{M,1}(first half) + (A_{M,2}(second half) shifted by M)
//   A_{2M,2} = A_{M,2}(first half) + (A_{M,1}(second half) shifted by M)
// with base A_{1,1} = {0}, A_{1,2} = {}.
std::pair<std::vector<int>, std::vector<int>> partition_rec(int M) {
  if (M == 1) return {{0}, {}};
  auto [a1, a2] = partition_rec(M / 2);
  std::vector<int> p1 = a1, p2 = a2;
  for (int i : a2) p1.push_back(i + M / 2);
  for (int i : a1) p2.push_back(i + M / 2);
  return {p1, p2};
}

}  // namespace

PartitionSet partition_indices(int M) {
  check_power_of_two(M, "partition_indices");
  auto [o1, o2] = partition_rec(M);
  PartitionSet ps;
  ps.M = M;
  // The recursion emits the canonical symbol-vector ordering; membership
  // lists are the same indices sorted.
  ps.order1 = o1;
  ps.order2 = o2;
  ps.p1 = o1;
  ps.p2 = o2;
  std::sort(ps.p1.begin(), ps.p1.end());
  std::sort(ps.p2.begin(), ps.p2.end());
  return ps;
}

std::vector<bool> conjugation_mask(int M) {
  check_power_of_two(M, "conjugation_mask");
  std::vector<bool> mask = {false};
  while (static_cast<int>(mask.size()) < M) {
    const size_t half = mask.size();
    for (size_t r = 0; r < half; ++r) mask.push_back(!mask[r]);
  }
  return mask;
}

namespace {

CMat build_rec(const CVec& s) {
  const Eigen::Index M = s.size();
  if (M == 1) {
    CMat G(1, 1);
    G(0, 0) = s(0);
    return G;
  }
  const Eigen::Index h = M / 2;
  const CVec s1 = s.head(h), s2 = s.tail(h);
  const CMat A = build_rec(s1);
  const CMat B = build_rec(s2);
  const CMat C = build_rec(s2.conjugate());
  const CMat D = build_rec(s1.conjugate());
  CMat G(M, M);
  G.topLeftCorner(h, h) = A;
  G.topRightCorner(h, h) = B;
  G.bottomLeftCorner(h, h) = -C;
  G.bottomRightCorner(h, h) = D;
  return G;
}

}  // namespace

Codeword build_code_matrix(const CVec& s) {
  check_power_of_two(static_cast<int>(s.size()), "build_code_matrix");
  return {build_rec(s), s};
}

Codeword build_partition_code(const CVec& s, int partition) {
  check_power_of_two(static_cast<int>(s.size()), "build_partition_code");
  check_partition_id(partition);
  const PartitionSet ps = partition_indices(static_cast<int>(s.size()));
  CVec masked = CVec::Zero(s.size());
  for (int idx : (partition == 1 ? ps.p1 : ps.p2)) masked(idx) = s(idx);
  return {build_rec(masked), masked};
}

CVec hat_transform(const CVec& z) {
  if (z.size() % 2 != 0)
    throw invalid_input("hat_transform: length must be even");
  const Eigen::Index h = z.size() / 2;
  CVec out(z.size());
  out.head(h) = -z.tail(h);
  out.tail(h) = z.head(h);
  return out;
}

std::vector<int> puncture_columns(int M, int M_target) {
  if (M_target < 1) throw invalid_input("puncture: target must be >= 1");
  if (M_target > M) throw invalid_input("puncture: target exceeds design size");
  if (next_power_of_two(M_target) != M)
    throw invalid_input("puncture: design size must be the next power of 2");
  std::vector<int> deleted;
  for (int c = M_target; c < M; ++c) deleted.push_back(c);
  return deleted;
}

CodeLayout code_layout(int M) {
  check_power_of_two(M, "code_layout");
  CodeLayout layout;
  layout.M = M;
  layout.index = IMat::Constant(M, M, -1);
  layout.sign = IMat::Zero(M, M);
  layout.conjugated.assign(M, std::vector<bool>(M, false));

  // Probe with unit and imaginary-unit symbols: the (r,c) entry for symbol m
  // is +-1 on the first probe; the second probe is -+i exactly when the
  // entry carries a conjugate.
  for (int m = 0; m < M; ++m) {
    CVec e = CVec::Zero(M);
    e(m) = 1.0;
    const CMat G1 = build_rec(e);
    e(m) = cxd(0.0, 1.0);
    const CMat Gi = build_rec(e);
    for (int r = 0; r < M; ++r)
      for (int c = 0; c < M; ++c) {
        const double re = G1(r, c).real();
        if (re == 0.0) continue;
        if (layout.index(r, c) != -1)
          throw consistency_error("code_layout: overlapping symbols");
        layout.index(r, c) = m;
        layout.sign(r, c) = re > 0 ? 1 : -1;
        // entry = sign * s_m  => imag probe gives sign * i
        // entry = sign * s_m* => imag probe gives -sign * i
        layout.conjugated[r][c] = (Gi(r, c).imag() * re) < 0;
      }
  }
  return layout;
}

void fill_code_matrix(const CodeLayout& layout, const CVec& s, CMat& G) {
  const int M = layout.M;
  G.resize(M, M);
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      const cxd v = s(layout.index(r, c));
      G(r, c) = static_cast<double>(layout.sign(r, c)) *
                (layout.conjugated[r][c] ? std::conj(v) : v);
    }
}

CoefficientMatrices coefficient_matrices(int M) {
  const CodeLayout layout = code_layout(M);
  CoefficientMatrices cm;
  cm.C.assign(M, CMat::Zero(M, M));
  cm.D.assign(M, CMat::Zero(M, M));
  for (int r = 0; r < M; ++r)
    for (int c = 0; c < M; ++c) {
      const int m = layout.index(r, c);
      const double sg = layout.sign(r, c);
      if (layout.conjugated[r][c])
        cm.D[m](r, c) = sg;
      else
        cm.C[m](r, c) = sg;
    }
  return cm;
}

}  // namespace qostbc
