#pragma once

#include <string>
#include <vector>

namespace zc {

struct CheckResult {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

// Reference reproduction suite: the catalog surfaces and dynamics checks that
// pin this library against the published example data, each run at a fixed
// tolerance. parallel enables the OpenMP direction sweeps.
std::vector<CheckResult> reproduce_paper_checks(bool parallel = true);

}  // namespace zc
