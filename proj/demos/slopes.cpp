// Newton slopes of a few isodisplays over F_2.
#include <iostream>

#include "wittkit/iso.hpp"

using namespace wittkit;

namespace {

void show(const char* label, const Display& D) {
  std::cout << label << ":";
  for (const auto& s : newton_slopes(isodisplay_of(D))) std::cout << " " << s;
  std::cout << "\n";
}

}  // namespace

int main() {
  auto k = Ring::galois_field(2, 1);
  const int m = 6;
  auto W = [&](i64 n) { return WittVector::from_int(k, m, n); };

  // ordinary elliptic curve: Φ = identity, weights (0, 1)
  WMatrix id = wm_identity(k, 2, m);
  show("ordinary", display_validate(GradedModule(k, m, {0, 1}), id));

  // supersingular: Φ swaps the two basis vectors
  WMatrix sw = WMatrix::from_fn(2, 2, [&](int i, int j) { return W(i != j ? 1 : 0); });
  show("supersingular", display_validate(GradedModule(k, m, {0, 1}), sw));

  // a rank 3 example with slopes 1/3
  WMatrix cyc = WMatrix::from_fn(3, 3, [&](int i, int j) { return W((i + 1) % 3 == j ? 1 : 0); });
  show("rank 3 cycle", display_validate(GradedModule(k, m, {0, 0, 1}), cyc));
}
