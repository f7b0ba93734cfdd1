#ifndef CORRTHERM_CHECKS_HPP
#define CORRTHERM_CHECKS_HPP

#include <string>
#include <vector>

namespace corrtherm {

/// One row of the built-in verification suite.
struct CriterionResult {
  std::string id;
  std::string description;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

/// Runs every built-in criterion at its pinned tolerance.
std::vector<CriterionResult> run_acceptance_suite();

/// Formats one table row (fixed-width, one line per criterion).
std::string format_criterion(const CriterionResult& r);

}  // namespace corrtherm

#endif
