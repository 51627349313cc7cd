// Characters of GF(5)^* with values in characteristic 13, and their orthogonality table.
#include <iostream>

#include "crosschar/crosschar.hpp"

using namespace crosschar;

int main() {
  const Field f5 = construct_field(5, 1);
  const CoeffField cf = coeff_field_for(f5, 13);
  std::cout << "values in GF(" << cf.field->order() << "), zeta = " << cf.zeta << "\n";
  const auto chars = all_characters(f5, cf);
  for (const auto& chi : chars) {
    std::cout << "chi_" << chi.a << ":";
    for (std::uint32_t x = 1; x < 5; ++x) std::cout << ' ' << chi.eval_code(x);
    std::cout << "\n";
  }
  std::cout << "sum over units of phi * psi^-1:\n";
  for (const auto& phi : chars) {
    for (const auto& psi : chars) std::cout << ' ' << orthogonality_sum(phi, psi).code();
    std::cout << "\n";
  }
}
