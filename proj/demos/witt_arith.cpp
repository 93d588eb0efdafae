// Small Witt vector session over F_4: sums of Teichmüller lifts, F and V.
#include <iostream>

#include "wittkit/witt.hpp"

using namespace wittkit;

int main() {
  auto k = Ring::galois_field(2, 2);
  const int m = 4;
  auto x = RingElement::gen_x(k);
  auto a = teichmuller(x, m), b = teichmuller(x * x, m);
  std::cout << "[x] + [x^2]   = " << a + b << "\n";
  std::cout << "[x] * [x^2]   = " << a * b << "\n";
  std::cout << "1 + 1         = " << WittVector::from_int(k, m, 2) << "\n";
  std::cout << "F([x])        = " << frobenius(a) << "\n";
  std::cout << "V([x])        = " << verschiebung(a) << "\n";
  std::cout << "FV(1) == p    : " << std::boolalpha
            << (frobenius(verschiebung(WittVector::one(k, m))) == WittVector::from_int(k, m, 2)) << "\n";
}
