#pragma once

#include <cstdint>

#include "qostbc/types.hpp"

namespace qostbc {

// Sign pattern (+-1 entries) of the channel-independent eigenvector matrix;
// the actual matrix is this divided by sqrt(M/2). Partition 1 recursion:
// base [1]; each column (a;b) emits (a;b;b;-a) then (a;b;-b;a), both /sqrt2.
// Partition 2 columns are the (b;-a) images of partition 1's columns.
IMat eigvec_sign_matrix(int M, int partition);

// W_{M,i}: (M/2)x(M/2) real orthogonal, entries +-(M/2)^{-1/2}. Its columns
// are eigenvectors of the partition Gram matrix for EVERY channel vector.
RMat eigvec_matrix(int M, int partition);

// Q = sqrt(M/2) * W_{M,1}; entries exactly +-1.
RMat q_matrix(int M);

// Determinant of the partition-1 code matrix through the product formula:
// f(Q^T v_1(s)) = prod_k |(Q^T v_1(s))_k|^2. Equals det(G[partition 1 of s])
// exactly (the determinant is real and nonnegative).
double partition_determinant(const CVec& s);

struct ChannelIndependenceReport {
  int M = 0;
  int samples = 0;
  // max over samples of |offdiag(W^T T W)|_max / ||T||_F, per partition
  double max_leakage_p1 = 0.0;
  double max_leakage_p2 = 0.0;
};

ChannelIndependenceReport verify_channel_independence(int M, int samples,
                                                      std::uint64_t seed);

}  // namespace qostbc
