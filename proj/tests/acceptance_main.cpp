// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <iostream>

#include "vacfree/acceptance.hpp"

int main() {
  const auto results = vacfree::acceptance::run_all();
  std::cout << vacfree::acceptance::render(results);
  return vacfree::acceptance::all_passed(results) ? 0 : 1;
}
