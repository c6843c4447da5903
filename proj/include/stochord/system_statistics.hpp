#pragma once

// Extreme order statistics of n independent, non-identical components:
// the minimum (series system) and the maximum (parallel system).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stochord/lifetime_models.hpp"

namespace stochord {

enum class Structure {
  series,    // X_{1:n}
  parallel,  // X_{n:n}
};

std::string to_string(Structure structure);

struct SystemSpec {
  std::vector<LifetimeModel> components;
  Structure structure = Structure::series;

  std::size_t size() const noexcept { return components.size(); }
  /// Throws UsageError when there are no components.
  void validate() const;
  /// True when every component belongs to the same family.
  bool homogeneous() const;
};

/// A single component viewed as a one-component system (min = max).
SystemSpec single(const LifetimeModel& model);

// All products over components are accumulated as sums of logs.

double system_cumulative_hazard(const SystemSpec& s, double x);  // -log sf
double system_log_cdf(const SystemSpec& s, double x);
double system_sf(const SystemSpec& s, double x);
double system_cdf(const SystemSpec& s, double x);
double system_pdf(const SystemSpec& s, double x);
double system_log_pdf(const SystemSpec& s, double x);
/// Hazard of either structure. Parallel systems go through pdf / sf.
double system_hazard(const SystemSpec& s, double x);
/// Reversed hazard of either structure. Throws DomainError where the cdf is 0.
double system_reversed_hazard(const SystemSpec& s, double x);

/// Hazard of a series system: the sum of component hazards.
/// Throws UsageError for a parallel system.
double series_hazard(const SystemSpec& s, double x);

/// Reversed hazard of a parallel system: the sum of component reversed
/// hazards. Throws UsageError for a series system and DomainError where the
/// system cdf is 0.
double parallel_reversed_hazard(const SystemSpec& s, double x);

/// Reversed hazard of the maximum of Weibull-G components sharing beta and
/// gamma, in the factored form
///   beta gamma w^(beta-1) f(gamma x) / (1 - F(gamma x))^2 * sum_i alpha_i e^(-alpha_i z) / (1 - e^(-alpha_i z)),
/// z = w(gamma x)^beta, evaluated straight from the baseline F and f.
double factored_parallel_reversed_hazard(std::span<const double> alphas, double beta,
                                         double gamma, const Baseline& baseline, double x);

/// Survival of the minimum of n Gompertz-Makeham components with common
/// (alpha, beta) and per-component lambda:
///   exp(-(sum lambda) x - n (alpha / beta)(exp(beta x) - 1)).
/// Depends on the lambdas only through their sum, which is accumulated in an
/// order-independent way.
double lambda_aggregate_sf(std::size_t n, std::span<const double> lambdas, double alpha,
                           double beta, double x);

/// Smallest x with system sf(x) < threshold.
double system_x_max(const SystemSpec& s, double threshold = 1e-6);

}  // namespace stochord
