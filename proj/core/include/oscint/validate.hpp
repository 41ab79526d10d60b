#pragma once
// Self-checks behind `oscint validate`: quick property tests per area.
#include <string>
#include <vector>

#include "oscint/types.hpp"

namespace oscint {

struct Check {
  std::string suite;
  std::string name;
  double value = 0;  // measured quantity (usually an error)
  double limit = 0;  // pass iff value <= limit
  bool pass = false;
  std::string note;
};

// suite: specfun | stokes | regimes | all; InvalidArgument otherwise
std::vector<Check> run_validation(const std::string& suite);
std::string format_check(const Check& c);

}  // namespace oscint
