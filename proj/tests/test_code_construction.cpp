#include <doctest.h>

#include <vector>

#include "qostbc/code_construction.hpp"
#include "qostbc/rng.hpp"

using namespace qostbc;

namespace {

CVec random_symbols(Rng& rng, int n) {
  CVec s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.cgaussian();
  return s;
}

int popcount(int x) {
  int c = 0;
  for (; x; x >>= 1) c += x & 1;
  return c;
}

}  // namespace

TEST_SUITE("code_construction") {

TEST_CASE("partitions match the frozen small cases") {
  CHECK(partition_indices(1).p1 == std::vector<int>{0});
  CHECK(partition_indices(1).p2.empty());
  CHECK(partition_indices(2).p1 == std::vector<int>{0});
  CHECK(partition_indices(2).p2 == std::vector<int>{1});
  CHECK(partition_indices(4).p1 == std::vector<int>{0, 3});
  CHECK(partition_indices(4).p2 == std::vector<int>{1, 2});
  CHECK(partition_indices(8).p1 == std::vector<int>{0, 3, 5, 6});
  CHECK(partition_indices(8).p2 == std::vector<int>{1, 2, 4, 7});
  CHECK(partition_indices(16).p1 ==
        std::vector<int>{0, 3, 5, 6, 9, 10, 12, 15});
}

TEST_CASE("partition membership is the even-popcount rule") {
  // independent characterization: doubling the size flips the parity of the
  // second half, so partition 1 collects exactly the even-popcount indices
  for (int M = 1; M <= 64; M *= 2) {
    const auto ps = partition_indices(M);
    std::vector<bool> in_p1(M, false);
    for (int i : ps.p1) in_p1[i] = true;
    std::vector<bool> in_p2(M, false);
    for (int i : ps.p2) in_p2[i] = true;
    for (int i = 0; i < M; ++i) {
      CHECK(in_p1[i] == (popcount(i) % 2 == 0));
      CHECK(in_p1[i] != in_p2[i]);  // disjoint and covering
    }
    // canonical orderings enumerate the memberships in increasing order
    CHECK(ps.order1 == ps.p1);
    CHECK(ps.order2 == ps.p2);
  }
  CHECK_THROWS_AS(partition_indices(12), invalid_input);
  CHECK_THROWS_AS(partition_indices(0), invalid_input);
}

TEST_CASE("conjugation mask doubles by complement") {
  const auto m8 = conjugation_mask(8);
  const bool expect8[] = {false, true, true, false, true, false, false, true};
  for (int r = 0; r < 8; ++r) CHECK(m8[r] == expect8[r]);

  for (int M = 1; M <= 64; M *= 2) {
    const auto mask = conjugation_mask(M);
    for (int r = 0; r < M; ++r) CHECK(mask[r] == (popcount(r) % 2 == 1));
  }
}

TEST_CASE("two antennas give the classic orthogonal block") {
  Rng rng(11);
  const CVec s = random_symbols(rng, 2);
  const CMat G = build_code_matrix(s).G;
  CHECK(G(0, 0) == s(0));
  CHECK(G(0, 1) == s(1));
  CHECK(G(1, 0) == -std::conj(s(1)));
  CHECK(G(1, 1) == std::conj(s(0)));
  // columns exactly orthogonal at this size
  CHECK(std::abs(G.col(0).dot(G.col(1))) <= 1e-15 * G.norm());
}

TEST_CASE("four antennas match the hand-expanded recursion") {
  Rng rng(12);
  const CVec s = random_symbols(rng, 4);
  const CMat G = build_code_matrix(s).G;
  const auto c = [](const cxd& z) { return std::conj(z); };
  CMat expect(4, 4);
  expect << s(0), s(1), s(2), s(3),                      //
      -c(s(1)), c(s(0)), -c(s(3)), c(s(2)),              //
      -c(s(2)), -c(s(3)), c(s(0)), c(s(1)),              //
      s(3), -s(2), -s(1), s(0);
  CHECK((G - expect).norm() == 0.0);
}

TEST_CASE("recursion blocks compose as declared") {
  Rng rng(13);
  for (int M : {4, 8, 16}) {
    const CVec s = random_symbols(rng, M);
    const CMat G = build_code_matrix(s).G;
    const CMat A = build_code_matrix(s.head(M / 2)).G;
    const CMat B = build_code_matrix(s.tail(M / 2)).G;
    CHECK((G.topLeftCorner(M / 2, M / 2) - A).norm() == 0.0);
    CHECK((G.topRightCorner(M / 2, M / 2) - B).norm() == 0.0);
    CHECK((G.bottomLeftCorner(M / 2, M / 2) + B.conjugate()).norm() == 0.0);
    CHECK((G.bottomRightCorner(M / 2, M / 2) - A.conjugate()).norm() == 0.0);
    // every symbol shows up once per row: total energy is M * ||s||^2
    CHECK(G.squaredNorm() ==
          doctest::Approx(M * s.squaredNorm()).epsilon(1e-14));
  }
  CHECK_THROWS_AS(build_code_matrix(CVec(3)), invalid_input);
  CHECK_THROWS_AS(build_code_matrix(CVec(0)), invalid_input);
}

TEST_CASE("partition codes split the full matrix") {
  Rng rng(14);
  for (int M : {2, 4, 8, 16}) {
    const CVec s = random_symbols(rng, M);
    const CMat G = build_code_matrix(s).G;
    const CMat G1 = build_partition_code(s, 1).G;
    const CMat G2 = build_partition_code(s, 2).G;
    CHECK((G1 + G2 - G).norm() == 0.0);

    // partition code == full code with the other partition zeroed
    const auto ps = partition_indices(M);
    CVec z = s;
    for (int i : ps.p2) z(i) = 0.0;
    CHECK((build_code_matrix(z).G - G1).norm() == 0.0);
  }
  CHECK_THROWS_AS(build_partition_code(CVec::Ones(4), 3), invalid_input);
  CHECK_THROWS_AS(build_partition_code(CVec::Ones(4), 0), invalid_input);
}

TEST_CASE("layout is a signed permutation consistent with the mask") {
  for (int M : {2, 4, 8, 16}) {
    const auto layout = code_layout(M);
    const auto mask = conjugation_mask(M);
    for (int r = 0; r < M; ++r) {
      std::vector<int> seen_row(M, 0);
      for (int c = 0; c < M; ++c) {
        ++seen_row[layout.index(r, c)];
        CHECK((layout.sign(r, c) == 1 || layout.sign(r, c) == -1));
        // conjugation is a property of the time slot, not the antenna
        CHECK(layout.conjugated[r][c] == mask[r]);
      }
      for (int m = 0; m < M; ++m) CHECK(seen_row[m] == 1);
    }
    for (int c = 0; c < M; ++c) {
      std::vector<int> seen_col(M, 0);
      for (int r = 0; r < M; ++r) ++seen_col[layout.index(r, c)];
      for (int m = 0; m < M; ++m) CHECK(seen_col[m] == 1);
    }
  }
}

TEST_CASE("fill_code_matrix reproduces the recursive builder exactly") {
  Rng rng(15);
  for (int M : {2, 4, 8, 16}) {
    const auto layout = code_layout(M);
    const CVec s = random_symbols(rng, M);
    CMat G(M, M);
    fill_code_matrix(layout, s, G);
    CHECK((G - build_code_matrix(s).G).norm() == 0.0);
  }
}

TEST_CASE("dispersion matrices rebuild the code") {
  Rng rng(16);
  for (int M : {2, 4, 8}) {
    const auto cm = coefficient_matrices(M);
    REQUIRE(static_cast<int>(cm.C.size()) == M);
    REQUIRE(static_cast<int>(cm.D.size()) == M);
    const CVec s = random_symbols(rng, M);
    CMat G = CMat::Zero(M, M);
    for (int m = 0; m < M; ++m)
      G += cm.C[m] * s(m) + cm.D[m] * std::conj(s(m));
    CHECK((G - build_code_matrix(s).G).norm() <= 1e-15 * G.norm());
    // a symbol enters each time slot either plain or conjugated, never both
    for (int m = 0; m < M; ++m)
      for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c)
          CHECK(cm.C[m](r, c) * cm.D[m](r, c) == cxd(0, 0));
  }
}

TEST_CASE("hat transform rotates halves and squares to minus one") {
  CVec z(4);
  z << cxd(1, 0), cxd(0, 2), cxd(3, 1), cxd(-1, -1);
  const CVec h = hat_transform(z);
  CHECK(h(0) == -z(2));
  CHECK(h(1) == -z(3));
  CHECK(h(2) == z(0));
  CHECK(h(3) == z(1));

  Rng rng(17);
  for (int M : {2, 4, 8, 16}) {
    const CVec v = random_symbols(rng, M);
    CHECK((hat_transform(hat_transform(v)) + v).norm() == 0.0);
  }
  CHECK_THROWS_AS(hat_transform(CVec(3)), invalid_input);
  CHECK(hat_transform(CVec(0)).size() == 0);  // empty is a valid no-op
}

TEST_CASE("puncturing deletes trailing columns only") {
  CHECK(puncture_columns(4, 3) == std::vector<int>{3});
  CHECK(puncture_columns(8, 5) == std::vector<int>{5, 6, 7});
  CHECK(puncture_columns(4, 4).empty());
  CHECK(puncture_columns(2, 2).empty());
  CHECK_THROWS_AS(puncture_columns(8, 3), invalid_input);   // wrong parent
  CHECK_THROWS_AS(puncture_columns(8, 9), invalid_input);   // too many
  CHECK_THROWS_AS(puncture_columns(8, 0), invalid_input);
  CHECK_THROWS_AS(puncture_columns(12, 12), invalid_input); // not a pow2
}

}  // TEST_SUITE
