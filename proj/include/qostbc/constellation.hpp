#pragma once

#include <string>
#include <vector>

#include "qostbc/types.hpp"

namespace qostbc {

struct Constellation {
  std::string name;
  std::vector<cxd> points;  // unit average energy
  int bits = 0;             // per symbol
};

// Gray-labeled QPSK: indices 0,1,3,2 walk the circle, adjacent labels differ
// in one bit. 0 -> (1+j)/sqrt2, 1 -> (-1+j)/sqrt2, 2 -> (1-j)/sqrt2,
// 3 -> (-1-j)/sqrt2.
const Constellation& qpsk();

// Lookup by CLI name ("qpsk"); unknown names are invalid input.
const Constellation& constellation_by_name(const std::string& name);

}  // namespace qostbc
