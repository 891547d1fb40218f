#pragma once

#include <string>
#include <vector>

namespace combicache {

struct FixtureResult {
  std::string group;
  std::string id;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Groups in run order: example1, example2, thm2, fig2, remark1, lemma1.
const std::vector<std::string>& fixture_groups();

/// Runs the regression fixtures, all of them or one group. Throws
/// ParameterError for an unknown group.
std::vector<FixtureResult> run_fixtures(const std::string& only = "");

}  // namespace combicache
