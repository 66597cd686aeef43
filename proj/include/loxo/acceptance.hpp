#pragma once

#include <string>
#include <vector>

namespace loxo {

struct Check {
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string suite;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  bool pass() const;
};

// Suites: all, relations, optimize, geometry.
std::vector<int> criteria_for_suite(const std::string& suite);
Criterion run_criterion(int id);
std::vector<Criterion> run_acceptance(const std::string& suite);

}  // namespace loxo
