#pragma once

#include <vector>

#include "qostbc/types.hpp"

namespace qostbc {

// The two disjoint symbol index sets and the canonical orderings in which
// their symbols appear in the per-partition symbol vectors. All indices are
// 0-based in code; printed output uses 1-based positions.
struct PartitionSet {
  int M = 0;
  std::vector<int> p1, p2;          // sorted membership
  std::vector<int> order1, order2;  // canonical symbol-vector orderings
};

PartitionSet partition_indices(int M);

// mask[r] == true means row r of the received block carries conjugated
// symbols and gets conjugated by the receiver's selective-conjugation step.
// Recursion: mask(1) = {false}, mask(2M) = concat(mask(M), !mask(M)).
std::vector<bool> conjugation_mask(int M);

struct Codeword {
  CMat G;  // M x M, rows = time slots, columns = antennas
  CVec s;  // the symbol vector it encodes
};

// Recursive rate-1 construction:
//   G_1[s] = [s1],
//   G_2M[s] = [[G_M[s_first],    G_M[s_second] ],
//              [-G_M[s*_second], G_M[s*_first] ]].
Codeword build_code_matrix(const CVec& s);

// Code matrix of the symbol vector restricted to one partition (the other
// partition's entries zeroed). Additivity: G[part 1] + G[part 2] = G[s].
Codeword build_partition_code(const CVec& s, int partition);

// z -> [-z_{M+1..2M}, z_{1..M}] for even-length z.
CVec hat_transform(const CVec& z);

// Columns (antennas) to delete when running M_target antennas on the parent
// power-of-2 design. Convention: the trailing columns go.
std::vector<int> puncture_columns(int M, int M_target);

// Positional symbol layout of G_M[s]: entry (r,c) equals
//   sign(r,c) * s[index(r,c)]            if conjugated(r,c) is false
//   sign(r,c) * conj(s[index(r,c)])      otherwise.
// Every row and every column holds each symbol index exactly once.
struct CodeLayout {
  int M = 0;
  IMat index;  // symbol index at (r,c)
  IMat sign;   // +1 or -1
  std::vector<std::vector<bool>> conjugated;
};

CodeLayout code_layout(int M);

// Fill G for a symbol vector using a precomputed layout (no allocation).
void fill_code_matrix(const CodeLayout& layout, const CVec& s, CMat& G);

// The linear-dispersion description G[s] = sum_m (C_m s_m + D_m conj(s_m)),
// obtained by probing the construction with unit and imaginary-unit inputs.
struct CoefficientMatrices {
  std::vector<CMat> C, D;
};

CoefficientMatrices coefficient_matrices(int M);

}  // namespace qostbc
