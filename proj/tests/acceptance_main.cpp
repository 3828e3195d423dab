#include <iostream>

#include "frob/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : frob::acceptance::run_all()) {
    std::cout << r.line() << '\n';
    if (!r.passed()) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
