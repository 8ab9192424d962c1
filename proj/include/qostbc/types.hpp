#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qostbc {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using IMat = Eigen::MatrixXi;
using IVec = Eigen::VectorXi;

// Error taxonomy. Callers that violate a precondition get invalid_input;
// a channel too weak to decode against gets degenerate_channel; an internal
// identity failing (construction bug, not user error) gets consistency_error;
// brute-force searches refuse oversized spaces with search_cap_exceeded.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct degenerate_channel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};
struct search_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_power_of_two(int m) { return m >= 1 && (m & (m - 1)) == 0; }

// floor(log2 m) for m >= 1
inline int int_log2(int m) {
  int k = 0;
  while ((1 << (k + 1)) <= m) ++k;
  return k;
}

// smallest power of two >= m
inline int next_power_of_two(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw invalid_input(msg);
}

}  // namespace qostbc
