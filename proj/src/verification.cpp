#include <Eigen/Eigenvalues>

#include "qostbc/code_construction.hpp"
#include "qostbc/eigenstructure.hpp"
#include "qostbc/equivalent_channel.hpp"
#include "qostbc/numerics.hpp"
#include "qostbc/rng.hpp"
#include "qostbc/sim_harness.hpp"

namespace qostbc {

bool VerificationReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

constexpr double kTiny = 1e-300;

CVec random_cvec(Rng& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
  return v;
}

Rng check_stream(std::uint64_t seed, int check_id, int M, int sample) {
  return Rng::substream(seed, static_cast<std::uint64_t>(check_id),
                        (static_cast<std::uint64_t>(M) << 32) |
                            static_cast<std::uint64_t>(sample));
}

using Provider = EquivalentChannelProvider;

CheckResult check_partition_orthogonality(std::uint64_t seed,
                                          const std::vector<int>& sizes,
                                          int samples, const Provider& E) {
  CheckResult r{"partition_orthogonality", 1e-12, 0.0, false};
  for (int M : sizes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 1, M, t);
      const CVec h = random_cvec(rng, M);
      const CMat E1 = E(h, 1), E2 = E(h, 2);
      const double rel =
          (E1.adjoint() * E2).norm() / std::max(E1.norm() * E2.norm(), kTiny);
      r.worst = std::max(r.worst, rel);
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_defining_relation(std::uint64_t seed,
                                    const std::vector<int>& sizes, int samples,
                                    const Provider& E) {
  CheckResult r{"defining_relation", 1e-13, 0.0, false};
  for (int M : sizes) {
    const auto mask = conjugation_mask(M);
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 2, M, t);
      const CVec h = random_cvec(rng, M);
      const CVec s = random_cvec(rng, M);
      for (int part = 1; part <= 2; ++part) {
        const CVec lhs =
            t_transform(build_partition_code(s, part).G * h, mask);
        const CVec rhs = E(h, part) * symbol_vector(s, part);
        const double rel =
            (lhs - rhs).norm() / std::max(lhs.norm(), kTiny);
        r.worst = std::max(r.worst, rel);
      }
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_gram_realness(std::uint64_t seed,
                                const std::vector<int>& sizes, int samples,
                                const Provider& E) {
  CheckResult r{"gram_realness", 1e-12, 0.0, false};
  for (int M : sizes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 3, M, t);
      const CVec h1 = random_cvec(rng, M);
      const CVec h2 = random_cvec(rng, M);
      const CMat E1a = E(h1, 1), E1b = E(h2, 1);
      const CMat E2a = E(h1, 2), E2b = E(h2, 2);
      const CMat mats[] = {
          E1a.adjoint() * E1a, E2a.adjoint() * E2a,
          E1a.adjoint() * E2b - E1b.transpose() * E2a.conjugate(),
          E1a.adjoint() * E1b + E1b.adjoint() * E1a,
          E2a.adjoint() * E2b + E2b.adjoint() * E2a};
      for (const CMat& A : mats) {
        const double rel =
            A.imag().cwiseAbs().maxCoeff() / std::max(A.norm(), kTiny);
        r.worst = std::max(r.worst, rel);
      }
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_eigen_pairing(std::uint64_t seed,
                                const std::vector<int>& sizes, int samples,
                                const Provider& E) {
  CheckResult r{"eigen_pairing", 1e-9, 0.0, false};
  for (int M : sizes) {
    if (M < 4) continue;  // halves of an eigenvector need size >= 1
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 4, M, t);
      const CVec h = random_cvec(rng, M);
      const CMat E1 = E(h, 1), E2 = E(h, 2);
      const CMat T1 = E1.adjoint() * E1;
      const CMat T2 = E2.adjoint() * E2;
      const auto eig = numerics::eig_hermitian((T1 + T1.adjoint()) / 2.0);
      const int m = M / 2, half = m / 2;
      const double scale = std::max(T1.norm(), kTiny);
      for (int k = 0; k < m; ++k) {
        CVec w(m);
        w.head(half) = eig.eigenvectors.col(k).tail(half);
        w.tail(half) = -eig.eigenvectors.col(k).head(half);
        const double resid =
            (T2 * w - eig.eigenvalues(k) * w).norm() / scale;
        r.worst = std::max(r.worst, resid);
      }
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_k_pairing(std::uint64_t seed, const std::vector<int>& sizes,
                            int samples, const Provider& E) {
  CheckResult r{"k_pairing", 1e-9, 0.0, false};
  for (int M : sizes) {
    if (M < 4) continue;
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 5, M, t);
      const CVec h = random_cvec(rng, M);
      const CVec h1 = h.head(M / 2), h2 = h.tail(M / 2);
      const CMat E1 = E(h, 1);
      const CMat T1 = E1.adjoint() * E1;
      const CMat K = E(h1, 1).adjoint() * E(h2, 2) -
                     E(h2, 1).transpose() * E(h1, 2).conjugate();
      const auto eig = numerics::eig_hermitian((T1 + T1.adjoint()) / 2.0);
      const int m = M / 2, half = m / 2;
      const double scale = std::max(K.norm(), kTiny);
      for (int k = 0; k < m; ++k) {
        const CVec a = eig.eigenvectors.col(k).head(half);
        const CVec b = eig.eigenvectors.col(k).tail(half);
        const CVec Kb = K * b;
        const CVec Ka = K.adjoint() * a;
        const cxd lam = a.dot(Kb) / std::max(a.squaredNorm(), kTiny);
        const double resid =
            ((Kb - lam * a).norm() + (Ka - std::conj(lam) * b).norm()) / scale;
        r.worst = std::max(r.worst, resid);
      }
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_w_leakage(std::uint64_t seed, const std::vector<int>& sizes,
                            int samples, const Provider& E) {
  CheckResult r{"w_leakage", 1e-10, 0.0, false};
  for (int M : sizes) {
    const RMat W1 = eigvec_matrix(M, 1);
    const RMat W2 = eigvec_matrix(M, 2);
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 6, M, t);
      const CVec h = random_cvec(rng, M);
      for (int part = 1; part <= 2; ++part) {
        const CMat Em = E(h, part);
        const RMat T = (Em.adjoint() * Em).real();
        const RMat& W = part == 1 ? W1 : W2;
        const RMat D = W.transpose() * T * W;
        double off = 0.0;
        for (int rr = 0; rr < D.rows(); ++rr)
          for (int cc = 0; cc < D.cols(); ++cc)
            if (rr != cc) off = std::max(off, std::abs(D(rr, cc)));
        r.worst = std::max(r.worst, off / std::max(T.norm(), kTiny));
      }
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_det_factorization(std::uint64_t seed,
                                    const std::vector<int>& sizes,
                                    int samples) {
  CheckResult r{"det_factorization", 1e-8, 0.0, false};
  for (int M : sizes) {
    if (M < 4) continue;
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 7, M, t);
      const CVec s = random_cvec(rng, M);
      const cxd lhs = numerics::det(build_partition_code(s, 1).G);
      const CVec s1 = s.head(M / 2), s2 = s.tail(M / 2);
      const CVec hat2 = hat_transform(s2);
      const cxd rhs = numerics::det(build_partition_code(s1 - hat2, 1).G) *
                      numerics::det(build_partition_code(s1 + hat2, 1).G);
      const double rel = std::abs(lhs - rhs) /
                         std::max({std::abs(lhs), std::abs(rhs), kTiny});
      r.worst = std::max(r.worst, rel);
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_det_product_formula(std::uint64_t seed,
                                      const std::vector<int>& sizes,
                                      int samples) {
  CheckResult r{"det_product_formula", 1e-8, 0.0, false};
  for (int M : sizes) {
    if (M < 2) continue;
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 8, M, t);
      const CVec s = random_cvec(rng, M);
      const cxd d = numerics::det(build_partition_code(s, 1).G);
      const double f = partition_determinant(s);
      const double scale = std::max(f, kTiny);
      // the determinant equals the product exactly, phase included
      const double rel = std::abs(d - cxd(f, 0.0)) / scale;
      r.worst = std::max(r.worst, rel);
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_eigenvalue_multiset(std::uint64_t seed,
                                      const std::vector<int>& sizes,
                                      int samples) {
  CheckResult r{"eigenvalue_multiset", 1e-8, 0.0, false};
  for (int M : sizes) {
    if (M != 4 && M != 8) continue;
    const RMat Q = q_matrix(M);
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 9, M, t);
      const CVec s = random_cvec(rng, M);
      const CMat G = build_partition_code(s, 1).G;
      Eigen::ComplexEigenSolver<CMat> solver(G);
      if (solver.info() != Eigen::Success)
        throw consistency_error("eigenvalue_multiset: solver failed");
      const CVec v = symbol_vector(s, 1);
      CVec claimed(M);
      claimed.head(M / 2) = Q.transpose() * v;
      claimed.tail(M / 2) = (Q.transpose() * v.conjugate());
      // greedy nearest matching: robust against ordering ties
      std::vector<bool> used(M, false);
      double scale = std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), kTiny);
      for (int i = 0; i < M; ++i) {
        double bestd = std::numeric_limits<double>::infinity();
        int bestj = -1;
        for (int j = 0; j < M; ++j) {
          if (used[j]) continue;
          const double d = std::abs(claimed(i) - solver.eigenvalues()(j));
          if (d < bestd) {
            bestd = d;
            bestj = j;
          }
        }
        used[bestj] = true;
        r.worst = std::max(r.worst, bestd / scale);
      }
    }
  }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_partition_additivity(std::uint64_t seed,
                                       const std::vector<int>& sizes,
                                       int samples) {
  CheckResult r{"partition_additivity", 1e-15, 0.0, false};
  for (int M : sizes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 10, M, t);
      const CVec s = random_cvec(rng, M);
      const CMat G = build_code_matrix(s).G;
      const CMat G1 = build_partition_code(s, 1).G;
      const CMat G2 = build_partition_code(s, 2).G;
      r.worst = std::max(
          r.worst, (G1 + G2 - G).norm() / std::max(G.norm(), kTiny));
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_energy_identity(std::uint64_t seed,
                                  const std::vector<int>& sizes, int samples,
                                  const Provider& E) {
  CheckResult r{"energy_identity", 1e-12, 0.0, false};
  for (int M : sizes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 11, M, t);
      const CVec h = random_cvec(rng, M);
      const double expect = (M / 2.0) * h.squaredNorm();
      for (int part = 1; part <= 2; ++part) {
        const double got = E(h, part).squaredNorm();
        r.worst =
            std::max(r.worst, std::abs(got - expect) / std::max(expect, kTiny));
      }
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_svd_contract(std::uint64_t seed, int samples) {
  CheckResult r{"svd_contract", 1e-12, 0.0, false};
  const int shapes[][2] = {{2, 2}, {4, 2}, {8, 4}, {16, 8}};
  for (auto [rows, cols] : shapes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 12, rows * 100 + cols, t);
      CMat A(rows, cols);
      for (int c = 0; c < cols; ++c)
        for (int rr = 0; rr < rows; ++rr) A(rr, c) = rng.cgaussian();
      const auto f = numerics::svd(A);
      const double recon =
          (f.U * f.S.cast<cxd>() * f.W.adjoint() - A).norm() /
          std::max(A.norm(), kTiny);
      r.worst = std::max(r.worst, recon);
      // left-inverse pattern: ones where a singular value was kept
      RMat pattern = f.S_pinv * f.S;
      for (int i = 0; i < f.rank; ++i) pattern(i, i) -= 1.0;
      r.worst = std::max(r.worst, pattern.cwiseAbs().maxCoeff());
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

CheckResult check_hat_involution(std::uint64_t seed,
                                 const std::vector<int>& sizes, int samples) {
  CheckResult r{"hat_involution", 1e-15, 0.0, false};
  for (int M : sizes)
    for (int t = 0; t < samples; ++t) {
      Rng rng = check_stream(seed, 13, M, t);
      const CVec z = random_cvec(rng, M);
      r.worst = std::max(r.worst, (hat_transform(hat_transform(z)) + z).norm() /
                                      std::max(z.norm(), kTiny));
    }
  r.pass = r.worst <= r.tolerance;
  return r;
}

}  // namespace

VerificationReport run_verification_suite(
    std::uint64_t seed, const std::vector<int>& sizes, int samples,
    const EquivalentChannelProvider& provider) {
  require(samples >= 1, "run_verification_suite: samples >= 1");
  require(!sizes.empty(), "run_verification_suite: no sizes given");
  for (int M : sizes)
    require(is_power_of_two(M) && M >= 2,
            "run_verification_suite: sizes must be powers of 2, >= 2");

  const Provider E = provider ? provider : [](const CVec& h, int part) {
    return equivalent_channel_extract(h, part).E;
  };

  VerificationReport rep;
  rep.checks.push_back(check_partition_orthogonality(seed, sizes, samples, E));
  rep.checks.push_back(check_defining_relation(seed, sizes, samples, E));
  rep.checks.push_back(check_gram_realness(seed, sizes, samples, E));
  rep.checks.push_back(check_eigen_pairing(seed, sizes, samples, E));
  rep.checks.push_back(check_k_pairing(seed, sizes, samples, E));
  rep.checks.push_back(check_w_leakage(seed, sizes, samples, E));
  rep.checks.push_back(check_det_factorization(seed, sizes, samples));
  rep.checks.push_back(check_det_product_formula(seed, sizes, samples));
  rep.checks.push_back(check_eigenvalue_multiset(seed, sizes, samples));
  rep.checks.push_back(check_partition_additivity(seed, sizes, samples));
  rep.checks.push_back(check_energy_identity(seed, sizes, samples, E));
  rep.checks.push_back(check_svd_contract(seed, samples));
  rep.checks.push_back(check_hat_involution(seed, sizes, samples));
  return rep;
}

}  // namespace qostbc
