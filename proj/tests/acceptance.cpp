// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include "sympde/selftest.hpp"

#include <cstdio>

int main() {
  auto results = sympde::selftest::run_all(/*quick=*/false, /*seed=*/12345);
  bool all = true;
  for (const auto &r : results) {
    std::printf("criterion %2d [%s] (%6.2fs) %s -- %s\n", r.id, r.pass ? "pass" : "FAIL", r.seconds,
                r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
