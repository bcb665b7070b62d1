#pragma once

#include <string>
#include <vector>

#include "hk/common.hpp"

namespace hk {

// One acceptance criterion outcome.  `measured` is the criterion's headline
// quantity (usually a max error) and `threshold` the bound it must satisfy;
// pass may also depend on side conditions recorded in `detail`.
struct CriterionResult {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  // run only the criteria whose id is listed (empty: run all)
  std::vector<std::string> only;
  // fault injection for sabotage detection: perturb the shift-operator
  // normalization so that SPH-ORACLE must fail
  bool corrupt_normalization = false;
};

// Identifiers of all criteria in execution order.
const std::vector<std::string>& acceptance_ids();

// Run the requested criteria and return one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace hk
