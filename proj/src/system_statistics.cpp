#include "stochord/system_statistics.hpp"

#include <cmath>

#include "numeric.hpp"
#include "stochord/errors.hpp"

namespace stochord {

using detail::kInf;

std::string to_string(Structure structure) {
  return structure == Structure::series ? "series" : "parallel";
}

void SystemSpec::validate() const {
  if (components.empty()) throw UsageError("a system needs at least one component");
}

bool SystemSpec::homogeneous() const {
  for (const auto& c : components) {
    if (c.family() != components.front().family()) return false;
  }
  return true;
}

SystemSpec single(const LifetimeModel& model) { return SystemSpec{{model}, Structure::series}; }

namespace {

double sum_cumulative_hazard(const SystemSpec& s, double x) {
  s.validate();
  double total = 0.0;
  for (const auto& c : s.components) total += c.cumulative_hazard(x);
  return total;
}

double sum_log_cdf(const SystemSpec& s, double x) {
  s.validate();
  double total = 0.0;
  for (const auto& c : s.components) total += detail::log1mexp(c.cumulative_hazard(x));
  return total;
}

double sum_hazard(const SystemSpec& s, double x) {
  s.validate();
  double total = 0.0;
  for (const auto& c : s.components) total += c.hazard(x);
  return total;
}

double sum_reversed_hazard(const SystemSpec& s, double x) {
  s.validate();
  double total = 0.0;
  for (const auto& c : s.components) total += c.reversed_hazard(x);
  return total;
}

}  // namespace

double system_cumulative_hazard(const SystemSpec& s, double x) {
  if (s.structure == Structure::series) return sum_cumulative_hazard(s, x);
  // -log(1 - prod cdf_i)
  const double log_cdf = sum_log_cdf(s, x);
  if (log_cdf == -kInf) return 0.0;
  return -detail::log1mexp(-log_cdf);
}

double system_log_cdf(const SystemSpec& s, double x) {
  if (s.structure == Structure::parallel) return sum_log_cdf(s, x);
  return detail::log1mexp(sum_cumulative_hazard(s, x));
}

double system_sf(const SystemSpec& s, double x) {
  if (s.structure == Structure::series) {
    return detail::sf_from_cumulative_hazard(sum_cumulative_hazard(s, x));
  }
  return -std::expm1(sum_log_cdf(s, x));
}

double system_cdf(const SystemSpec& s, double x) {
  if (s.structure == Structure::series) {
    return detail::cdf_from_cumulative_hazard(sum_cumulative_hazard(s, x));
  }
  return std::exp(sum_log_cdf(s, x));
}

double system_log_pdf(const SystemSpec& s, double x) {
  if (s.structure == Structure::series) {
    return std::log(sum_hazard(s, x)) - sum_cumulative_hazard(s, x);
  }
  const double log_cdf = sum_log_cdf(s, x);
  if (log_cdf == -kInf) return -kInf;
  return log_cdf + std::log(sum_reversed_hazard(s, x));
}

double system_pdf(const SystemSpec& s, double x) { return std::exp(system_log_pdf(s, x)); }

double system_hazard(const SystemSpec& s, double x) {
  if (s.structure == Structure::series) return sum_hazard(s, x);
  return std::exp(system_log_pdf(s, x) + system_cumulative_hazard(s, x));
}

double system_reversed_hazard(const SystemSpec& s, double x) {
  if (s.structure == Structure::parallel) return parallel_reversed_hazard(s, x);
  const double h = sum_cumulative_hazard(s, x);
  if (h <= 0.0) throw DomainError("reversed hazard requested where the system cdf is 0");
  return std::exp(std::log(sum_hazard(s, x)) - detail::log_expm1(h));
}

double series_hazard(const SystemSpec& s, double x) {
  if (s.structure != Structure::series) throw UsageError("series_hazard needs a series system");
  return sum_hazard(s, x);
}

double parallel_reversed_hazard(const SystemSpec& s, double x) {
  if (s.structure != Structure::parallel) {
    throw UsageError("parallel_reversed_hazard needs a parallel system");
  }
  return sum_reversed_hazard(s, x);
}

double factored_parallel_reversed_hazard(std::span<const double> alphas, double beta,
                                         double gamma, const Baseline& baseline, double x) {
  if (alphas.empty()) throw UsageError("need at least one alpha");
  const double t = gamma * x;
  const double big_f = baseline.cdf(t);
  if (!(big_f > 0.0)) throw DomainError("factored reversed hazard requested where the cdf is 0");
  const double odds = big_f / (1.0 - big_f);
  const double z = std::pow(odds, beta);
  double tail = 0.0;
  for (double a : alphas) {
    const double e = std::exp(-a * z);
    tail += a * e / (1.0 - e);
  }
  const double s = 1.0 - big_f;
  return beta * gamma * std::pow(odds, beta - 1.0) * baseline.pdf(t) / (s * s) * tail;
}

double lambda_aggregate_sf(std::size_t n, std::span<const double> lambdas, double alpha,
                           double beta, double x) {
  if (lambdas.size() != n) throw UsageError("lambda vector length must equal n");
  const double lambda_sum = detail::ordered_sum(lambdas);
  const double h = lambda_sum * x + static_cast<double>(n) * (alpha / beta) * std::expm1(beta * x);
  return detail::sf_from_cumulative_hazard(h);
}

double system_x_max(const SystemSpec& s, double threshold) {
  s.validate();
  return find_x_max([&s](double x) { return system_sf(s, x); }, threshold);
}

}  // namespace stochord
