#pragma once

// JSON run configurations. Parsing is strict: unknown keys, missing keys and
// wrong types are rejected with the line of the offending entry.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "stochord/majorization.hpp"
#include "stochord/order_certifier.hpp"
#include "stochord/system_statistics.hpp"

namespace stochord::cli {

/// Input error; the message already carries "file:line:" when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridOverrides {
  std::optional<std::size_t> count;
  std::optional<double> x_max;
  std::optional<GridPolicy> policy;
};

// {"family": "weibull-g" | "gompertz-makeham", "structure": "series" | "parallel",
//  "baseline": "exponential" (W-G only, optional),
//  "components": [{"alpha": .., "beta": .., "gamma": ..}, ...]}
// GM components take "lambda" in place of "gamma".
SystemSpec load_system(const std::filesystem::path& path);

// {"order": "hr" (optional), "lhs": <system>, "rhs": <system>,
//  "grid": {"count": N, "x_max": F, "policy": "linear" | "log"} (optional)}
// The comparison reads lhs <=order rhs.
struct CompareConfig {
  SystemSpec lhs;
  SystemSpec rhs;
  std::optional<Order> order;
  GridOverrides grid;
};

CompareConfig load_compare(const std::filesystem::path& path);

// {"matrix": [[row 0], [row 1]]}
ParamMatrix load_matrix(const std::filesystem::path& path);

}  // namespace stochord::cli
