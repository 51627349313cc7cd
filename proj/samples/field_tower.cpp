// GF(7) inside GF(49): generators, the tower embedding, and a square root of the generator.
#include <iostream>

#include "crosschar/crosschar.hpp"

using namespace crosschar;

int main() {
  const Field f7 = construct_field(7, 1);
  const Field f49 = construct_field(7, 2);
  std::cout << "GF(7):  " << f7->spec_line() << ", generator " << f7->format(f7->generator()) << "\n";
  std::cout << "GF(49): " << f49->spec_line() << ", generator " << f49->format(f49->generator()) << "\n";

  const FieldElement w = FieldElement::generator(f7);
  const FieldElement y = sqrt_ext(w);
  std::cout << "sqrt of " << f7->format(w.code()) << " in GF(49): " << f49->format(y.code()) << "\n";
  std::cout << "check y*y == embed(w): " << ((y * y) == embed(w, f49) ? "yes" : "no") << "\n";

  // the embedding respects addition as well as multiplication
  const Embedding e(f7, f49);
  bool additive = true;
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b) additive = additive && e(f7->add(a, b)) == f49->add(e(a), e(b));
  std::cout << "embedding additive: " << (additive ? "yes" : "no") << "\n";
}
