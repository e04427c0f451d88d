#pragma once

#include <string>
#include <vector>

namespace vacfree::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured quantities, 17 significant digits
};

// Criteria 1-13: closed-form reproduction and property checks on the three graphene
// coefficient choices (c = 1).
std::vector<CriterionResult> run_checks();

// Criteria 1-13 followed by 14, which re-runs 1-13 and requires the rendered output to
// be byte-identical.
std::vector<CriterionResult> run_all();

// One line per criterion: "PASS  [ 1] name: detail".
std::string render(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace vacfree::acceptance
