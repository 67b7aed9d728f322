// Acceptance battery: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "gwq/selftest.hpp"

int main() {
  bool all_ok = true;
  for (const auto& r : gwq::run_selftest()) {
    std::printf("%s  %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
