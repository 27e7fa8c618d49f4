#pragma once

// Reproduction checks for the published constants, used by `phc verify`.

#include <string>
#include <string_view>
#include <vector>

#include "phc/quadrature.hpp"

namespace phc {

struct VerifyRow {
  std::string target;
  std::string criterion;
  double achieved = 0;
  double required = 0;
  bool pass = false;
  // Error text when the check threw.
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_passed() const;
};

// target: ball2, ball3, square, interval or all. Throws Error(Parse) for an
// unknown target; numerical failures become failing rows.
VerifyReport verify(std::string_view target, const QuadSpec& quad = {});

}  // namespace phc
