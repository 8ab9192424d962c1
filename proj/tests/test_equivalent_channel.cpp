#include <doctest.h>

#include "qostbc/code_construction.hpp"
#include "qostbc/equivalent_channel.hpp"
#include "qostbc/rng.hpp"

using namespace qostbc;

namespace {

CVec random_cvec(Rng& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
  return v;
}

}  // namespace

TEST_SUITE("equivalent_channel") {

TEST_CASE("t_transform conjugates exactly the masked rows") {
  CVec y(4);
  y << cxd(1, 2), cxd(3, -4), cxd(0, 5), cxd(-1, 1);
  const auto mask = conjugation_mask(4);  // F T T F
  const CVec t = t_transform(y, mask);
  CHECK(t(0) == y(0));
  CHECK(t(1) == std::conj(y(1)));
  CHECK(t(2) == std::conj(y(2)));
  CHECK(t(3) == y(3));
  CHECK_THROWS_AS(t_transform(y, conjugation_mask(8)), invalid_input);
}

TEST_CASE("symbol_vector picks each partition in canonical order") {
  CVec s(4);
  s << cxd(1, 0), cxd(2, 0), cxd(3, 0), cxd(4, 0);
  const CVec v1 = symbol_vector(s, 1);
  const CVec v2 = symbol_vector(s, 2);
  REQUIRE(v1.size() == 2);
  REQUIRE(v2.size() == 2);
  CHECK(v1(0) == s(0));
  CHECK(v1(1) == s(3));
  CHECK(v2(0) == s(1));
  CHECK(v2(1) == s(2));
  CHECK_THROWS_AS(symbol_vector(s, 3), invalid_input);
}

TEST_CASE("alamouti equivalent channels are the textbook ones") {
  Rng rng(21);
  const CVec h = random_cvec(rng, 2);
  const CMat E1 = equivalent_channel_extract(h, 1).E;
  const CMat E2 = equivalent_channel_extract(h, 2).E;
  REQUIRE(E1.rows() == 2);
  REQUIRE(E1.cols() == 1);
  CHECK(E1(0, 0) == h(0));
  CHECK(E1(1, 0) == std::conj(h(1)));
  CHECK(E2(0, 0) == h(1));
  CHECK(E2(1, 0) == -std::conj(h(0)));
}

TEST_CASE("defining relation: conjugated receive vector is linear in v") {
  Rng rng(22);
  for (int M : {2, 4, 8, 16}) {
    const auto mask = conjugation_mask(M);
    for (int rep = 0; rep < 20; ++rep) {
      const CVec h = random_cvec(rng, M);
      const CVec s = random_cvec(rng, M);
      for (int part = 1; part <= 2; ++part) {
        const CVec lhs =
            t_transform(build_partition_code(s, part).G * h, mask);
        const CVec rhs = equivalent_channel_extract(h, part).E *
                         symbol_vector(s, part);
        CHECK((lhs - rhs).norm() <= 1e-14 * (lhs.norm() + 1e-300));
      }
    }
  }
}

TEST_CASE("partitions stay orthogonal for every channel") {
  Rng rng(23);
  for (int M : {2, 4, 8, 16}) {
    for (int rep = 0; rep < 20; ++rep) {
      const CVec h = random_cvec(rng, M);
      const CMat E1 = equivalent_channel_extract(h, 1).E;
      const CMat E2 = equivalent_channel_extract(h, 2).E;
      CHECK((E1.adjoint() * E2).norm() <= 1e-13 * E1.norm() * E2.norm());
    }
  }
}

TEST_CASE("block recursion equals extraction up to per-column signs") {
  Rng rng(24);
  for (int M : {2, 4, 8, 16}) {
    const CVec h = random_cvec(rng, M);
    for (int part = 1; part <= 2; ++part) {
      const CMat Er = equivalent_channel_recursive(h, part).E;
      const CMat Ee = equivalent_channel_extract(h, part).E;
      const IVec sg = recursion_column_signs(M, part);
      REQUIRE(Er.cols() == Ee.cols());
      REQUIRE(sg.size() == Ee.cols());
      for (int k = 0; k < Ee.cols(); ++k) {
        CHECK((sg(k) == 1 || sg(k) == -1));
        // entries are copies/negations/conjugations, so this is bit-exact
        CHECK((Er.col(k) - double(sg(k)) * Ee.col(k)).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("column sign recursion matches the frozen small cases") {
  const auto expect = [](const IVec& v, std::initializer_list<int> e) {
    REQUIRE(v.size() == static_cast<int>(e.size()));
    int k = 0;
    for (int x : e) CHECK(v(k++) == x);
  };
  expect(recursion_column_signs(2, 1), {1});
  expect(recursion_column_signs(2, 2), {-1});
  expect(recursion_column_signs(4, 1), {1, -1});
  expect(recursion_column_signs(4, 2), {1, -1});
  expect(recursion_column_signs(8, 1), {1, -1, 1, -1});
  expect(recursion_column_signs(8, 2), {-1, 1, -1, 1});
}

TEST_CASE("gram matrices are real and structured") {
  Rng rng(25);
  for (int M : {2, 4, 8}) {
    const CVec h1 = random_cvec(rng, M);
    const CVec h2 = random_cvec(rng, M);
    const GramMatrices g = gram_matrices(h1, h2);
    // T's are PSD diagonal-heavy; Y and Z symmetric by construction
    CHECK((g.T1 - g.T1.transpose()).norm() <= 1e-12 * g.T1.norm());
    CHECK((g.T2 - g.T2.transpose()).norm() <= 1e-12 * g.T2.norm());
    CHECK((g.Y - g.Y.transpose()).norm() <= 1e-12 * (g.Y.norm() + 1e-300));
    CHECK((g.Z - g.Z.transpose()).norm() <= 1e-12 * (g.Z.norm() + 1e-300));
    // T1(h) trace = (M/2) ||h||^2 (each coefficient appears M/2 times)
    CHECK(g.T1.trace() ==
          doctest::Approx((M / 2.0) * h1.squaredNorm()).epsilon(1e-13));
  }
}

TEST_CASE("extraction table rebuilds E without allocation") {
  Rng rng(26);
  for (int M : {2, 4, 8, 16}) {
    for (int part = 1; part <= 2; ++part) {
      const auto table = extraction_table(M, part);
      const CVec h = random_cvec(rng, M);
      CMat E(M, M / 2);
      fill_equivalent_channel(table, h, E);
      CHECK((E - equivalent_channel_extract(h, part).E).norm() == 0.0);
    }
  }
}

TEST_CASE("energy of the equivalent channel is (M/2) ||h||^2") {
  Rng rng(27);
  for (int M : {2, 4, 8, 16, 32}) {
    const CVec h = random_cvec(rng, M);
    for (int part = 1; part <= 2; ++part) {
      const CMat E = equivalent_channel_extract(h, part).E;
      CHECK(E.squaredNorm() ==
            doctest::Approx((M / 2.0) * h.squaredNorm()).epsilon(1e-13));
    }
  }
}

TEST_CASE("bad arguments are rejected") {
  CHECK_THROWS_AS(equivalent_channel_extract(CVec::Ones(3), 1), invalid_input);
  CHECK_THROWS_AS(equivalent_channel_extract(CVec::Ones(4), 0), invalid_input);
  CHECK_THROWS_AS(equivalent_channel_recursive(CVec::Ones(6), 2),
                  invalid_input);
  CHECK_THROWS_AS(extraction_table(5, 1), invalid_input);
}

}  // TEST_SUITE
