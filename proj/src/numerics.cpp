#include "qostbc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace qostbc::numerics {

namespace {

bool all_finite(const CMat& A) { return A.allFinite(); }

}  // namespace

SvdFactors svd(const CMat& A) {
  if (A.rows() < 1 || A.cols() < 1) throw invalid_input("svd: empty matrix");
  if (!all_finite(A)) throw invalid_input("svd: non-finite entries");

  Eigen::JacobiSVD<CMat> solver(A, Eigen::ComputeFullU | Eigen::ComputeFullV);

  const Eigen::Index m = A.rows();
  const Eigen::Index k = A.cols();
  SvdFactors f;
  f.U = solver.matrixU();
  f.W = solver.matrixV();
  f.singular_values = solver.singularValues();  // Eigen returns descending

  const double smax =
      f.singular_values.size() > 0 ? f.singular_values(0) : 0.0;
  const double cut = kSvRelTol * smax;

  f.S = RMat::Zero(m, k);
  f.S_pinv = RMat::Zero(k, m);
  f.rank = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
    double sv = f.singular_values(i);
    if (sv <= cut) {
      sv = 0.0;
      f.singular_values(i) = 0.0;
    }
    f.S(i, i) = sv;
    if (sv > 0.0) {
      f.S_pinv(i, i) = 1.0 / sv;
      ++f.rank;
    }
  }
  return f;
}

HermitianEigen eig_hermitian(const CMat& A) {
  if (A.rows() != A.cols()) throw invalid_input("eig_hermitian: not square");
  if (!all_finite(A)) throw invalid_input("eig_hermitian: non-finite entries");
  const double scale = A.norm();
  if ((A - A.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300))
    throw invalid_input("eig_hermitian: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMat> solver(A);
  if (solver.info() != Eigen::Success)
    throw consistency_error("eig_hermitian: solver failed");

  // Eigen sorts ascending; flip to the descending convention.
  const Eigen::Index n = A.rows();
  HermitianEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = CMat(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  return out;
}

cxd det(const CMat& A) {
  if (A.rows() != A.cols()) throw invalid_input("det: not square");
  if (!all_finite(A)) throw invalid_input("det: non-finite entries");
  return Eigen::PartialPivLU<CMat>(A).determinant();
}

int rank(const CMat& A) { return svd(A).rank; }

}  // namespace qostbc::numerics
