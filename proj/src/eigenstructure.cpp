#include "qostbc/eigenstructure.hpp"

#include <cmath>

#include "qostbc/equivalent_channel.hpp"
#include "qostbc/rng.hpp"

namespace qostbc {

IMat eigvec_sign_matrix(int M, int partition) {
  if (!is_power_of_two(M) || M < 2)
    throw invalid_input("eigvec_sign_matrix: size must be a power of 2, >= 2");
  if (partition != 1 && partition != 2)
    throw invalid_input("partition id must be 1 or 2");

  IMat S(1, 1);
  S(0, 0) = 1;
  int size = 2;
  while (size < M) {
    const int rows = S.rows();
    IMat next(2 * rows, 2 * S.cols());
    for (int j = 0; j < S.cols(); ++j) {
      const int half = rows / 2;
      // source column (a; b) -> (a; b; b; -a), (a; b; -b; a)
      for (int r = 0; r < rows; ++r) {
        next(r, 2 * j) = S(r, j);
        next(r, 2 * j + 1) = S(r, j);
      }
      if (half == 0) {
        // 1x1 source: a = whole column, b empty
        next(rows, 2 * j) = -S(0, j);
        next(rows, 2 * j + 1) = S(0, j);
      } else {
        for (int r = 0; r < half; ++r) {
          next(rows + r, 2 * j) = S(half + r, j);          // b
          next(rows + half + r, 2 * j) = -S(r, j);         // -a
          next(rows + r, 2 * j + 1) = -S(half + r, j);     // -b
          next(rows + half + r, 2 * j + 1) = S(r, j);      // a
        }
      }
    }
    S = next;
    size *= 2;
  }
  if (partition == 2 && M > 2) {
    // column (a; b) -> (b; -a)
    const int rows = S.rows();
    const int half = rows / 2;
    IMat S2(rows, S.cols());
    for (int j = 0; j < S.cols(); ++j)
      for (int r = 0; r < half; ++r) {
        S2(r, j) = S(half + r, j);
        S2(half + r, j) = -S(r, j);
      }
    S = S2;
  }
  return S;
}

RMat eigvec_matrix(int M, int partition) {
  const IMat S = eigvec_sign_matrix(M, partition);
  return S.cast<double>() / std::sqrt(static_cast<double>(M / 2));
}

RMat q_matrix(int M) {
  if (!is_power_of_two(M) || M < 2)
    throw invalid_input("q_matrix: size must be a power of 2, >= 2");
  return eigvec_sign_matrix(M, 1).cast<double>();
}

double partition_determinant(const CVec& s) {
  const int M = static_cast<int>(s.size());
  if (!is_power_of_two(M) || M < 2)
    throw invalid_input("partition_determinant: size must be a power of 2, >= 2");
  const CVec v = symbol_vector(s, 1);
  const RMat Q = q_matrix(M);
  double f = 1.0;
  for (int k = 0; k < M / 2; ++k) {
    cxd acc = 0.0;
    for (int r = 0; r < M / 2; ++r) acc += Q(r, k) * v(r);
    f *= std::norm(acc);
  }
  return f;
}

ChannelIndependenceReport verify_channel_independence(int M, int samples,
                                                      std::uint64_t seed) {
  if (samples < 1) throw invalid_input("verify_channel_independence: samples >= 1");
  const RMat W1 = eigvec_matrix(M, 1);
  const RMat W2 = eigvec_matrix(M, 2);

  ChannelIndependenceReport rep;
  rep.M = M;
  rep.samples = samples;
  for (int t = 0; t < samples; ++t) {
    Rng rng = Rng::substream(seed, 0x1eacu, static_cast<std::uint64_t>(t) | (static_cast<std::uint64_t>(M) << 32));
    CVec h(M);
    for (int i = 0; i < M; ++i) h(i) = rng.cgaussian();
    for (int part = 1; part <= 2; ++part) {
      const CMat E = equivalent_channel_extract(h, part).E;
      const RMat T = (E.adjoint() * E).real();
      const RMat& W = part == 1 ? W1 : W2;
      const RMat D = W.transpose() * T * W;
      double off = 0.0;
      for (int r = 0; r < D.rows(); ++r)
        for (int c = 0; c < D.cols(); ++c)
          if (r != c) off = std::max(off, std::abs(D(r, c)));
      const double leak = off / std::max(T.norm(), 1e-300);
      if (part == 1)
        rep.max_leakage_p1 = std::max(rep.max_leakage_p1, leak);
      else
        rep.max_leakage_p2 = std::max(rep.max_leakage_p2, leak);
    }
  }
  return rep;
}

}  // namespace qostbc
