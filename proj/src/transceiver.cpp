#include "qostbc/transceiver.hpp"

#include <cmath>

#include "qostbc/eigenstructure.hpp"

namespace qostbc {

CVec modulate(const std::vector<int>& indices,
              const Constellation& constellation) {
  CVec out(indices.size());
  const int q = static_cast<int>(constellation.points.size());
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= q)
      throw invalid_input("modulate: index out of range");
    out(i) = constellation.points[indices[i]];
  }
  return out;
}

LinkContext::LinkContext(const CodeSpec& s)
    : spec(s),
      R(build_precoder(s)),
      layout(code_layout(s.M)),
      etab1(extraction_table(s.M, 1)),
      etab2(extraction_table(s.M, 2)),
      W1(eigvec_matrix(s.M, 1).cast<cxd>()),
      W2(eigvec_matrix(s.M, 2).cast<cxd>()),
      mask(conjugation_mask(s.M)) {
  const PartitionSet ps = partition_indices(s.M);
  order1 = ps.order1;
  order2 = ps.order2;

  // All per-group search candidates, lexicographic in the digit vector
  // (first group position = most significant digit).
  const int g = s.group_size();
  const int q = static_cast<int>(s.constellation.points.size());
  const CMat A = group_block(s);
  std::uint64_t total = 1;
  for (int k = 0; k < g; ++k) total *= q;
  candidate_values.resize(total, g);
  CVec pt(g);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rem = t;
    for (int k = g - 1; k >= 0; --k) {
      pt(k) = s.constellation.points[rem % q];
      rem /= q;
    }
    candidate_values.row(t) = (A * pt).transpose();
  }
}

Codeword encode(const CVec& c, const LinkContext& ctx) {
  if (c.size() != ctx.spec.M) throw invalid_input("encode: wrong vector length");
  Codeword cw;
  cw.s = ctx.R * c;
  fill_code_matrix(ctx.layout, cw.s, cw.G);
  return cw;
}

CMat channel_apply(const CMat& G, const ChannelRealization& ch, Rng& rng) {
  if (G.cols() != ch.H.rows()) throw invalid_input("channel_apply: dimension mismatch");
  const double a = std::sqrt(ch.rho / static_cast<double>(G.cols()));
  CMat X = a * (G * ch.H);
  for (Eigen::Index c = 0; c < X.cols(); ++c)
    for (Eigen::Index r = 0; r < X.rows(); ++r) X(r, c) += rng.cgaussian();
  return X;
}

CMat channel_apply_noiseless(const CMat& G, const ChannelRealization& ch) {
  if (G.cols() != ch.H.rows()) throw invalid_input("channel_apply: dimension mismatch");
  const double a = std::sqrt(ch.rho / static_cast<double>(G.cols()));
  return a * (G * ch.H);
}

void decode_ml(const CMat& X, const ChannelRealization& ch,
               const LinkContext& ctx, Workspace& ws, std::vector<int>& out) {
  const int M = ctx.spec.M;
  const int m = M / 2;
  const int g = ctx.spec.group_size();
  const int kg = ctx.spec.groups_per_partition();
  const int N = static_cast<int>(ch.H.cols());
  const double a = std::sqrt(ch.rho / M);

  if (ch.H.rows() != M || X.rows() != M || X.cols() != N)
    throw invalid_input("decode_ml: dimension mismatch");
  if (ch.H.squaredNorm() <= 1e-24)
    throw degenerate_channel("decode_ml: channel is numerically zero");

  out.assign(M, 0);
  ws.E.resize(M, m);
  ws.EW.resize(M, m);
  ws.xhat.resize(M);
  ws.y.resize(m, N);
  ws.sig.resize(m, N);

  const std::uint64_t n_cand = ctx.candidate_values.rows();

  for (int part = 1; part <= 2; ++part) {
    const ExtractionTable& etab = part == 1 ? ctx.etab1 : ctx.etab2;
    const CMat& W = part == 1 ? ctx.W1 : ctx.W2;
    const auto& order = part == 1 ? ctx.order1 : ctx.order2;

    for (int nn = 0; nn < N; ++nn) {
      fill_equivalent_channel(etab, ch.H.col(nn), ws.E);
      ws.EW.noalias() = ws.E * W;
      for (int r = 0; r < M; ++r)
        ws.xhat(r) = ctx.mask[r] ? std::conj(X(r, nn)) : X(r, nn);
      // Column k of EW is sigma_k * u_k: the eigenvector matrix
      // diagonalizes the Gram exactly, so the columns are orthogonal and
      // projecting on them loses nothing and keeps the noise white.
      double smax = 0.0;
      for (int k = 0; k < m; ++k) {
        const double sv = ws.EW.col(k).norm();
        ws.sig(k, nn) = sv;
        smax = std::max(smax, sv);
      }
      const double cut = 1e-9 * smax;
      for (int k = 0; k < m; ++k) {
        if (ws.sig(k, nn) <= cut) {
          // carries no signal; drop the row from the metric
          ws.sig(k, nn) = 0.0;
          ws.y(k, nn) = 0.0;
        } else {
          ws.y(k, nn) = ws.EW.col(k).dot(ws.xhat) / ws.sig(k, nn);
        }
      }
    }

    for (int j = 0; j < kg; ++j) {
      double best = std::numeric_limits<double>::infinity();
      std::uint64_t best_t = 0;
      for (std::uint64_t t = 0; t < n_cand; ++t) {
        double met = 0.0;
        for (int nn = 0; nn < N; ++nn)
          for (int k = 0; k < g; ++k) {
            const int row = j * g + k;
            if (ws.sig(row, nn) == 0.0) continue;
            const cxd diff = ws.y(row, nn) -
                             a * ws.sig(row, nn) * ctx.candidate_values(t, k);
            met += std::norm(diff);
          }
        if (met < best) {
          best = met;
          best_t = t;
        }
      }
      const int q = static_cast<int>(ctx.spec.constellation.points.size());
      std::uint64_t rem = best_t;
      for (int k = g - 1; k >= 0; --k) {
        out[order[j * g + k]] = static_cast<int>(rem % q);
        rem /= q;
      }
    }
  }
}

std::vector<int> decode_ml(const CMat& X, const ChannelRealization& ch,
                           const LinkContext& ctx) {
  Workspace ws;
  std::vector<int> out;
  decode_ml(X, ch, ctx, ws, out);
  return out;
}

std::vector<int> decode_joint_oracle(const CMat& X,
                                     const ChannelRealization& ch,
                                     const LinkContext& ctx) {
  const int M = ctx.spec.M;
  const int q = static_cast<int>(ctx.spec.constellation.points.size());
  if (M * ctx.spec.constellation.bits > 20)
    throw search_cap_exceeded(
        "decode_joint_oracle: full codebook search too large");
  const double a = std::sqrt(ch.rho / M);

  std::uint64_t total = 1;
  for (int k = 0; k < M; ++k) total *= q;

  CVec c(M), s(M);
  CMat G(M, M), Xm;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_t = 0;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rem = t;
    for (int k = M - 1; k >= 0; --k) {
      c(k) = ctx.spec.constellation.points[rem % q];
      rem /= q;
    }
    s.noalias() = ctx.R * c;
    fill_code_matrix(ctx.layout, s, G);
    Xm.noalias() = a * (G * ch.H);
    const double met = (X - Xm).squaredNorm();
    if (met < best) {
      best = met;
      best_t = t;
    }
  }
  std::vector<int> out(M);
  std::uint64_t rem = best_t;
  for (int k = M - 1; k >= 0; --k) {
    out[k] = static_cast<int>(rem % q);
    rem /= q;
  }
  return out;
}

std::vector<int> ideal_orthogonal_reference(const CVec& c, const CMat& H,
                                            double rho, int M_norm,
                                            const Constellation& constellation,
                                            Rng& rng) {
  const double scale = std::sqrt(rho / M_norm) * H.norm();
  const int q = static_cast<int>(constellation.points.size());
  std::vector<int> out(c.size());
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const cxd y = scale * c(k) + rng.cgaussian();
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < q; ++i) {
      const double d = std::norm(y - scale * constellation.points[i]);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    out[k] = best_i;
  }
  return out;
}

}  // namespace qostbc
