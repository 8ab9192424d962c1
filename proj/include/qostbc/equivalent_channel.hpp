#pragma once

#include <vector>

#include "qostbc/types.hpp"

namespace qostbc {

// Selective conjugation: entry r conjugated iff mask[r].
CVec t_transform(const CVec& y, const std::vector<bool>& mask);

// The (M/2)-vector of partition-i symbols in canonical order.
CVec symbol_vector(const CVec& s, int partition);

struct EquivalentChannel {
  int M = 0;
  int partition = 0;
  CMat E;  // M x (M/2)
  CVec h;
};

// Ground-truth equivalent channel: column k is the selectively conjugated
// response of the partition code to a unit symbol at the k-th canonical
// position, so that conj_mask(G[partition part of s] * h) == E * v(s)
// holds by construction. This is the convention the decoder uses.
EquivalentChannel equivalent_channel_extract(const CVec& h, int partition);

// Literal block recursion
//   E_2M,1(h) = [[ E_M,1(h1),  E_M,2(h2)], [ E*_M,1(h2), -E*_M,2(h1)]]
//   E_2M,2(h) = [[-E_M,2(h1), -E_M,1(h2)], [-E*_M,2(h2),  E*_M,1(h1)]]
// with base E_1,1(h) = [h1], E_1,2 empty. Columns equal the extracted form
// times recursion_column_signs (per-column +-1), not a single global sign.
EquivalentChannel equivalent_channel_recursive(const CVec& h, int partition);

// Sign of each recursive column relative to extraction. Closed recursion:
//   sg1(2M) = concat(sg1(M), sg2(M)), sg2(2M) = concat(-sg2(M), -sg1(M)),
// base sg1(1) = {+1}, sg2(1) = {}.
IVec recursion_column_signs(int M, int partition);

// Real Gram matrices of the two-channel family. With E_i = E_i(h), F_i = E_i(h2):
//   T1 = E1^+ E1,  T2 = E2^+ E2  (h = h1)
//   K  = E1(h1)^+ E2(h2) - E1(h2)^T conj(E2(h1))
//   Y  = E1(h1)^+ E1(h2) + E1(h2)^+ E1(h1)
//   Z  = E2(h1)^+ E2(h2) + E2(h2)^+ E2(h1)
// All five are real; the builder asserts that and truncates.
struct GramMatrices {
  RMat T1, T2, K, Y, Z;
};

GramMatrices gram_matrices(const CVec& h1, const CVec& h2);

// Allocation-free construction of the extracted E from a channel vector:
// E(r,k) = sign(r,k) * h[col(r,k)], conjugated when mask[r] is set.
struct ExtractionTable {
  int M = 0;
  int partition = 0;
  IMat col;   // M x (M/2)
  IMat sign;  // M x (M/2), +-1
  std::vector<bool> mask;
};

ExtractionTable extraction_table(int M, int partition);

void fill_equivalent_channel(const ExtractionTable& table, const CVec& h,
                             CMat& E);

}  // namespace qostbc
