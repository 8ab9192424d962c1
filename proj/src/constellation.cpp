#include "qostbc/constellation.hpp"

#include <cmath>

namespace qostbc {

const Constellation& qpsk() {
  static const Constellation c = [] {
    const double a = M_SQRT1_2;
    Constellation q;
    q.name = "qpsk";
    q.bits = 2;
    q.points = {cxd(a, a), cxd(-a, a), cxd(a, -a), cxd(-a, -a)};
    return q;
  }();
  return c;
}

const Constellation& constellation_by_name(const std::string& name) {
  if (name == "qpsk") return qpsk();
  throw invalid_input("unknown constellation: " + name);
}

}  // namespace qostbc
