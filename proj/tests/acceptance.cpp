#include <cstdio>
#include <cstdlib>
#include <string>

#include "wittkit/selftest.hpp"

int main(int argc, char** argv) {
  wittkit::selftest::Options opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  wittkit::selftest::run(opt, {}, [&](const wittkit::selftest::CriterionResult& r) {
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of 12 criteria failed\n", failed);
  return failed ? 1 : 0;
}
