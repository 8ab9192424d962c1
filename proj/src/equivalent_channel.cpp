#include "qostbc/equivalent_channel.hpp"

#include "qostbc/code_construction.hpp"

namespace qostbc {

namespace {

void check_partition_id(int partition) {
  if (partition != 1 && partition != 2)
    throw invalid_input("partition id must be 1 or 2");
}

}  // namespace

CVec t_transform(const CVec& y, const std::vector<bool>& mask) {
  if (static_cast<size_t>(y.size()) != mask.size())
    throw invalid_input("t_transform: length mismatch");
  CVec out(y.size());
  for (Eigen::Index r = 0; r < y.size(); ++r)
    out(r) = mask[r] ? std::conj(y(r)) : y(r);
  return out;
}

CVec symbol_vector(const CVec& s, int partition) {
  check_partition_id(partition);
  const PartitionSet ps = partition_indices(static_cast<int>(s.size()));
  const auto& order = partition == 1 ? ps.order1 : ps.order2;
  CVec v(order.size());
  for (size_t k = 0; k < order.size(); ++k) v(k) = s(order[k]);
  return v;
}

ExtractionTable extraction_table(int M, int partition) {
  check_partition_id(partition);
  const CodeLayout layout = code_layout(M);
  const PartitionSet ps = partition_indices(M);
  const auto& order = partition == 1 ? ps.order1 : ps.order2;
  const auto mask = conjugation_mask(M);

  ExtractionTable t;
  t.M = M;
  t.partition = partition;
  t.mask = mask;
  t.col = IMat::Zero(M, M / 2);
  t.sign = IMat::Zero(M, M / 2);
  // Column k of E responds to the symbol at canonical position k. In row r
  // that symbol sits in exactly one code-matrix column c, contributing
  // sign(r,c) * h_c; rows whose symbols appear conjugated coincide with the
  // conjugation mask, so after selective conjugation the entry is
  // sign * h_c or sign * conj(h_c) according to mask[r].
  for (int k = 0; k < M / 2; ++k) {
    const int m = order[k];
    for (int r = 0; r < M; ++r) {
      int found = -1;
      for (int c = 0; c < M; ++c)
        if (layout.index(r, c) == m) {
          found = c;
          break;
        }
      if (found < 0) throw consistency_error("extraction_table: missing symbol");
      if (layout.conjugated[r][found] != mask[r])
        throw consistency_error(
            "extraction_table: conjugation pattern disagrees with row mask");
      t.col(r, k) = found;
      t.sign(r, k) = layout.sign(r, found);
    }
  }
  return t;
}

void fill_equivalent_channel(const ExtractionTable& table, const CVec& h,
                             CMat& E) {
  const int M = table.M;
  E.resize(M, M / 2);
  for (int k = 0; k < M / 2; ++k)
    for (int r = 0; r < M; ++r) {
      const cxd v = h(table.col(r, k));
      E(r, k) =
          static_cast<double>(table.sign(r, k)) * (table.mask[r] ? std::conj(v) : v);
    }
}

EquivalentChannel equivalent_channel_extract(const CVec& h, int partition) {
  const int M = static_cast<int>(h.size());
  if (!is_power_of_two(M))
    throw invalid_input("equivalent_channel: size must be a power of 2");
  const ExtractionTable table = extraction_table(M, partition);
  EquivalentChannel ec;
  ec.M = M;
  ec.partition = partition;
  ec.h = h;
  fill_equivalent_channel(table, h, ec.E);
  return ec;
}

namespace {

// Literal block recursion; returns an M x (M/2) matrix (M x 0 for the empty
// base of partition 2 at size 1).
CMat recursive_rec(const CVec& h, int partition) {
  const Eigen::Index M = h.size();
  if (M == 1) {
    if (partition == 1) {
      CMat E(1, 1);
      E(0, 0) = h(0);
      return E;
    }
    return CMat(1, 0);
  }
  const Eigen::Index m = M / 2;
  const CVec h1 = h.head(m), h2 = h.tail(m);
  CMat E(M, m);
  if (partition == 1) {
    const CMat A = recursive_rec(h1, 1);  // m x m/2 (m x 1 at m=1)
    const CMat B = recursive_rec(h2, 2);
    const CMat C = recursive_rec(h2, 1);
    const CMat D = recursive_rec(h1, 2);
    E.topLeftCorner(m, A.cols()) = A;
    E.topRightCorner(m, B.cols()) = B;
    E.bottomLeftCorner(m, C.cols()) = C.conjugate();
    E.bottomRightCorner(m, D.cols()) = -D.conjugate();
  } else {
    const CMat A = recursive_rec(h1, 2);
    const CMat B = recursive_rec(h2, 1);
    const CMat C = recursive_rec(h2, 2);
    const CMat D = recursive_rec(h1, 1);
    E.topLeftCorner(m, A.cols()) = -A;
    E.topRightCorner(m, B.cols()) = -B;
    E.bottomLeftCorner(m, C.cols()) = -C.conjugate();
    E.bottomRightCorner(m, D.cols()) = D.conjugate();
  }
  return E;
}

}  // namespace

EquivalentChannel equivalent_channel_recursive(const CVec& h, int partition) {
  const int M = static_cast<int>(h.size());
  if (!is_power_of_two(M))
    throw invalid_input("equivalent_channel: size must be a power of 2");
  check_partition_id(partition);
  EquivalentChannel ec;
  ec.M = M;
  ec.partition = partition;
  ec.h = h;
  ec.E = recursive_rec(h, partition);
  return ec;
}

IVec recursion_column_signs(int M, int partition) {
  if (!is_power_of_two(M))
    throw invalid_input("recursion_column_signs: size must be a power of 2");
  check_partition_id(partition);
  std::vector<int> s1 = {1}, s2 = {};
  int size = 1;
  while (size < M) {
    std::vector<int> n1 = s1, n2;
    for (int v : s2) n1.push_back(v);
    for (int v : s2) n2.push_back(-v);
    for (int v : s1) n2.push_back(-v);
    s1 = std::move(n1);
    s2 = std::move(n2);
    size *= 2;
  }
  const auto& src = partition == 1 ? s1 : s2;
  IVec out(src.size());
  for (size_t i = 0; i < src.size(); ++i) out(i) = src[i];
  return out;
}

GramMatrices gram_matrices(const CVec& h1, const CVec& h2) {
  if (h1.size() != h2.size())
    throw invalid_input("gram_matrices: length mismatch");
  const int M = static_cast<int>(h1.size());
  if (!is_power_of_two(M))
    throw invalid_input("gram_matrices: size must be a power of 2");

  const CMat E1a = equivalent_channel_extract(h1, 1).E;
  const CMat E1b = equivalent_channel_extract(h2, 1).E;
  const CMat E2a = equivalent_channel_extract(h1, 2).E;
  const CMat E2b = equivalent_channel_extract(h2, 2).E;

  const CMat T1 = E1a.adjoint() * E1a;
  const CMat T2 = E2a.adjoint() * E2a;
  const CMat K = E1a.adjoint() * E2b - E1b.transpose() * E2a.conjugate();
  const CMat Y = E1a.adjoint() * E1b + E1b.adjoint() * E1a;
  const CMat Z = E2a.adjoint() * E2b + E2b.adjoint() * E2a;

  auto realness = [](const CMat& A, const char* name) {
    const double scale = std::max(A.norm(), 1e-300);
    if (A.imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw consistency_error(std::string("gram_matrices: ") + name +
                              " has a non-real part beyond tolerance");
    return RMat(A.real());
  };

  GramMatrices g;
  g.T1 = realness(T1, "T1");
  g.T2 = realness(T2, "T2");
  g.K = realness(K, "K");
  g.Y = realness(Y, "Y");
  g.Z = realness(Z, "Z");
  return g;
}

}  // namespace qostbc
