#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horocp/lemmas.hpp"

namespace horocp {

struct SuiteOptions {
  std::uint64_t seed = 0;
  double residual_tol = kEqualityTol;
  double slack_tol = kSlackTol;
  // Honoured by the checks that take a single group: cocycle, commutator,
  // length-axioms, central-length (radius only).
  std::optional<std::string> group;
  std::optional<double> radius;
};

// Every check name accepted by run_suite_check, in suite order ("all" excluded).
const std::vector<std::string>& suite_check_names();

// Runs one named check over its default instance set, seeded by
// derive_seed(seed, name).
CheckReport run_suite_check(const std::string& name, const SuiteOptions& opt);

}  // namespace horocp
