// Points of the GL_1 RZ space for b = p, μ = (1) over F_2, by degree window.
#include <iostream>

#include "wittkit/rz.hpp"

using namespace wittkit;

int main() {
  auto k = Ring::galois_field(2, 1);
  const int m = 4;
  QMatrix b{0, WMatrix::from_fn(1, 1, [&](int, int) { return WittVector::from_int(k, m, 2); })};
  auto F = validate_framing(cocharacter({1}), b);
  for (int w = 0; w <= 2; ++w) {
    auto E = rz_enumerate(F, w);
    std::cout << "window " << w << ": " << E.points.size() << " points, " << E.orbits << " orbits, "
              << E.scanned << " candidates\n";
  }
}
