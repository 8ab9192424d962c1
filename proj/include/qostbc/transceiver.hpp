#pragma once

#include <cstdint>
#include <vector>

#include "qostbc/code_construction.hpp"
#include "qostbc/equivalent_channel.hpp"
#include "qostbc/precoder.hpp"
#include "qostbc/rng.hpp"
#include "qostbc/types.hpp"

namespace qostbc {

// Map constellation indices to symbols.
CVec modulate(const std::vector<int>& indices,
              const Constellation& constellation);

struct ChannelRealization {
  CMat H;  // M x N, rows for punctured antennas are zero
  double rho = 1.0;  // average SNR per receive antenna, linear
};

// Immutable per-spec tables shared by encoder and decoder (and across
// threads): precoder, code layout, per-partition extraction tables and
// eigenvector matrices, and the per-group candidate table
// candidate_values.row(t) = A * points[digits of t] in lexicographic
// digit order (first group position = most significant digit).
struct LinkContext {
  CodeSpec spec;
  CMat R;
  CodeLayout layout;
  ExtractionTable etab1, etab2;
  CMat W1, W2;                  // complex copies for mixed products
  std::vector<int> order1, order2;
  CMat candidate_values;        // q^g x g
  std::vector<bool> mask;

  explicit LinkContext(const CodeSpec& spec);
};

// Scratch buffers so the per-trial hot path never allocates.
struct Workspace {
  CVec s, xhat, h;
  CMat G, E, EW;
  CMat y;    // (M/2) x N projected statistics per partition pass
  RMat sig;  // matching singular values (real)
  std::vector<int> decided;
};

// s = R*c, then the recursive code matrix of s.
Codeword encode(const CVec& c, const LinkContext& ctx);

// X = sqrt(rho/M) * G * H + V, V entries CN(0,1) drawn column-major.
CMat channel_apply(const CMat& G, const ChannelRealization& ch, Rng& rng);
CMat channel_apply_noiseless(const CMat& G, const ChannelRealization& ch);

// Maximum-likelihood detection through the partition-separating receiver:
// selectively conjugate each receive column, project onto the scaled
// left-singular directions u_k = E*w_k/sigma_k of each partition's
// equivalent channel, and search each g-symbol group exhaustively. Exact ML
// because the partitions are orthogonal, the projection is information-
// lossless on the signal subspace, and the precoder makes the metric
// separate per group. Ties break toward the lowest index vector.
// Throws degenerate_channel when ||H|| is numerically zero.
std::vector<int> decode_ml(const CMat& X, const ChannelRealization& ch,
                           const LinkContext& ctx);
void decode_ml(const CMat& X, const ChannelRealization& ch,
               const LinkContext& ctx, Workspace& ws, std::vector<int>& out);

// Exhaustive search over all |constellation|^M information vectors.
// Ground truth for small M; refuses when M * bits_per_symbol > 20.
std::vector<int> decode_joint_oracle(const CMat& X,
                                     const ChannelRealization& ch,
                                     const LinkContext& ctx);

// The fictitious rate-1 orthogonal benchmark: per symbol k,
// y_k = sqrt(rho/M) * ||H||_F * c_k + CN(0,1), minimum-distance detection.
std::vector<int> ideal_orthogonal_reference(const CVec& c, const CMat& H,
                                            double rho, int M_norm,
                                            const Constellation& constellation,
                                            Rng& rng);

}  // namespace qostbc
