#pragma once

// Grid certification of the usual stochastic, hazard rate, reversed hazard
// rate and likelihood ratio orders between two systems, plus the Schur
// condition checker and the auxiliary functions h1, h2, g.
//
// Every verdict is a certificate at grid resolution: it records the grid it
// was computed on so a failure can be replayed.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochord/grid_kernels.hpp"
#include "stochord/majorization.hpp"
#include "stochord/system_statistics.hpp"

namespace stochord {

enum class Order { st, hr, rh, lr };

std::string to_string(Order order);
std::optional<Order> parse_order(std::string_view text);

enum class GridPolicy { linear, log_spaced };

std::string to_string(GridPolicy policy);

struct Grid {
  std::vector<double> points;  // strictly increasing, first point > 0
  GridPolicy policy = GridPolicy::linear;
  double x_max = 0.0;

  /// linear: x_max * k / count for k = 1..count.
  /// log_spaced: count points from x_max * 1e-6 to x_max, geometric.
  /// Throws UsageError for count < 16 or non-positive x_max.
  static Grid make(GridPolicy policy, std::size_t count, double x_max);
};

/// Grid on (0, X_max] where X_max is the larger of the two systems' sf < 1e-6
/// points, unless `x_max` overrides it.
Grid grid_for(const SystemSpec& f, const SystemSpec& g, std::size_t count = 2048,
              GridPolicy policy = GridPolicy::linear, std::optional<double> x_max = std::nullopt);

/// Per-point tolerance max(absolute, relative * local scale).
struct Tolerance {
  double absolute = 1e-9;
  double relative = 1e-7;

  double at(double scale) const;
};

struct OrderVerdict {
  Order order = Order::st;
  bool holds = false;
  /// Abscissa of the worst violation; empty when the order holds.
  std::optional<double> witness_x;
  /// Abscissa where slack + tolerance is smallest, violated or not.
  double worst_x = 0.0;
  /// Signed slack at worst_x (>= 0 means the order holds locally).
  double margin = 0.0;
  /// Tolerance in force at worst_x; holds <=> margin >= -tolerance.
  double tolerance = 0.0;
  std::size_t grid_count = 0;
  std::size_t points_used = 0;
  double x_max = 0.0;
  GridPolicy policy = GridPolicy::linear;
  /// Ratio path only: sf underflowed before x_max and the grid was cut.
  bool truncated = false;
};

/// The compared quantities on the grid. `diff` is the local slack, so it is
/// non-negative everywhere the order holds:
///   st  lhs = sf_F,        rhs = sf_G,        diff = rhs - lhs
///   hr  lhs = r_F,         rhs = r_G,         diff = lhs - rhs
///       (ratio path: lhs/rhs are -log sf, diff is the increment of log(sf_G / sf_F))
///   rh  lhs = rr_F,        rhs = rr_G,        diff = rhs - lhs
///   lr  lhs = log pdf_F,   rhs = log pdf_G,   diff = increment of log(pdf_G / pdf_F)
struct Curve {
  std::vector<double> x;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> diff;

  bool operator==(const Curve&) const = default;
};

struct Certification {
  OrderVerdict verdict;
  Curve curve;
};

/// Checks F <=_order G, F and G being the first and second system.
Certification certify(Order order, const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                      const Tolerance& tol = {}, Execution exec = Execution::parallel);

/// F <=st G: sf_F <= sf_G pointwise.
OrderVerdict certify_st(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol = {}, Execution exec = Execution::parallel);
/// F <=hr G. Series systems (closed-form hazards) use r_F >= r_G pointwise;
/// parallel systems check that sf_G / sf_F is non-decreasing.
OrderVerdict certify_hr(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol = {}, Execution exec = Execution::parallel);
/// F <=rh G: reversed hazards rr_F <= rr_G where both cdfs exceed 1e-12.
OrderVerdict certify_rh(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol = {}, Execution exec = Execution::parallel);
/// F <=lr G: pdf_G / pdf_F non-decreasing, in log space.
OrderVerdict certify_lr(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol = {}, Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Schur conditions

enum class SchurClass { convex_consistent, concave_consistent, both, neither };

std::string to_string(SchurClass c);

struct SchurPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;  // (a_i - a_j)(d_i psi - d_j psi), summed over rows for matrices
};

struct SchurDiagnostics {
  SchurClass classification = SchurClass::neither;
  std::vector<double> gradient;  // central differences, row-major for matrices
  std::vector<SchurPair> pairs;
  double tolerance = 0.0;

  bool convex_consistent() const {
    return classification == SchurClass::convex_consistent || classification == SchurClass::both;
  }
  bool concave_consistent() const {
    return classification == SchurClass::concave_consistent || classification == SchurClass::both;
  }
};

using VectorFn = std::function<double(std::span<const double>)>;
using MatrixFn = std::function<double(const ParamMatrix&)>;

/// Sign test of (a_i - a_j)(d_i psi - d_j psi) over all pairs with central
/// differences (step 1e-6 * max(1, |a_i|)). psi must be symmetric: one
/// permutation is spot-checked and a mismatch beyond 1e-9 relative throws
/// UsageError. Non-finite evaluations throw DomainError.
SchurDiagnostics schur_condition_check(const VectorFn& psi, std::span<const double> sample);

/// Two-row variant over column pairs; psi must be invariant under column
/// permutations.
SchurDiagnostics schur_condition_check(const MatrixFn& psi, const ParamMatrix& sample);

/// e^x - x e^x - 1 (non-positive on x >= 0).
double h1(double x);
/// x e^x - 2 e^x + x + 2 (non-negative on x >= 0).
double h2(double x);
/// alpha / (e^(alpha z) - 1); the per-component weight of the parallel
/// reversed hazard with z = w(gamma x)^beta.
double g_alpha(double alpha, double z);

}  // namespace stochord
