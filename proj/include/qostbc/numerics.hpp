#pragma once

#include "qostbc/types.hpp"

namespace qostbc::numerics {

// Relative threshold under which singular values are treated as zero.
inline constexpr double kSvRelTol = 1e-9;

struct SvdFactors {
  CMat U;       // m x m unitary
  RMat S;       // m x k, singular values on the diagonal, descending
  CMat W;       // k x k unitary (right factor), A = U * S * W^dagger
  RMat S_pinv;  // k x m, inverse of each kept singular value on the diagonal
  RVec singular_values;  // length min(m, k), descending, zeroed below tol
  int rank = 0;          // count of singular values above kSvRelTol * sigma_max
};

// Full SVD with deterministic descending order. Values below
// kSvRelTol * sigma_max are reported as zero and excluded from S_pinv.
SvdFactors svd(const CMat& A);

struct HermitianEigen {
  RVec eigenvalues;   // descending
  CMat eigenvectors;  // column k pairs with eigenvalues[k], orthonormal
};

// Eigendecomposition of a Hermitian matrix; rejects input with
// ||A - A^dagger|| > 1e-10 * ||A||.
HermitianEigen eig_hermitian(const CMat& A);

// Determinant of a square matrix via pivoted LU.
cxd det(const CMat& A);

// Number of singular values above kSvRelTol * sigma_max.
int rank(const CMat& A);

}  // namespace qostbc::numerics
