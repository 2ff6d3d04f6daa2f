// Shared error types, tolerances, limits and logging.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace robustflow {

// Absolute tolerance for flow feasibility and decomposition residuals.
inline constexpr double kFeasTol = 1e-9;

// Tolerance for comparing flow values, bounds and objectives.
inline constexpr double kValueTol = 1e-6;

// Invalid caller input (bad indices, malformed data, violated preconditions).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration (paths, scenarios, B&B nodes) would exceed its limit.
// Enumerators refuse instead of truncating.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationLimits {
  std::int64_t max_paths = 100000;
  std::int64_t max_scenarios = 1000000;
  std::int64_t node_limit = 1000000;
};

// min(C(n,k), cap) without overflow.
std::int64_t binomial_capped(int n, int k, std::int64_t cap);

// Log verbosity from ROBUSTFLOW_LOG (0/off, 1/info, 2/debug). Messages go to stderr.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace robustflow
