// A principal series module of SL2(F_5) over GF(7): spin a vector, then find composition factors.
#include <iostream>

#include "crosschar/crosschar.hpp"

using namespace crosschar;

int main() {
  // induced from the trivial character of the Borel subgroup
  const ModulePtr b = principal_series(5, 7, 1);
  std::cout << "dimension " << b->dim() << "\n";

  const SpinResult s = spin(b, {eta_s(b)}, true);
  std::cout << "submodule spun from (1 - s)1: dimension " << s.dim() << "\n";

  const ChopResult c = chop(b->rep());
  std::cout << "composition factor dimensions:";
  for (auto d : c.factors) std::cout << ' ' << d;
  std::cout << (c.decided ? "" : " (undecided)") << "\n";
}
