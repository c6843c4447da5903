#pragma once

// Closed-form lifetime laws for single components: the Weibull-G family over
// a baseline distribution, and Gompertz-Makeham.

#include <functional>
#include <memory>
#include <string>
#include <variant>

namespace stochord {

using ScalarFn = std::function<double(double)>;

enum class BaselineKind { exponential_standard, user_supplied };

/// Baseline distribution F of the Weibull-G construction, evaluated at the
/// scaled argument t = gamma * x. The shipped baseline is the standard
/// exponential F(t) = 1 - exp(-t); anything else is supplied by the caller.
class Baseline {
 public:
  static Baseline exponential();

  /// `cdf` and `pdf` must describe a distribution on t > 0. The second and
  /// third odds derivatives are optional; without them OddsFn falls back to
  /// central differences of the analytic first derivative.
  static Baseline custom(ScalarFn cdf, ScalarFn pdf, ScalarFn odds_d2 = {},
                         ScalarFn odds_d3 = {});

  BaselineKind kind() const noexcept { return kind_; }
  double cdf(double t) const;
  double pdf(double t) const;

 private:
  friend class OddsFn;

  struct Custom {
    ScalarFn cdf;
    ScalarFn pdf;
    ScalarFn odds_d2;
    ScalarFn odds_d3;
  };

  Baseline(BaselineKind kind, std::shared_ptr<const Custom> custom)
      : kind_(kind), custom_(std::move(custom)) {}

  BaselineKind kind_;
  std::shared_ptr<const Custom> custom_;
};

/// The odds map w(t) = F(t) / (1 - F(t)) of a baseline, composed with the
/// scaled argument: every formula downstream uses w(gamma * x).
class OddsFn {
 public:
  explicit OddsFn(Baseline baseline) : baseline_(std::move(baseline)) {}

  double operator()(double t) const;
  /// log w(t); -inf at t = 0, +inf where F(t) == 1.
  double log_value(double t) const;
  double d1(double t) const;
  double log_d1(double t) const;
  double d2(double t) const;
  double d3(double t) const;

 private:
  double fd_step(double t) const;

  Baseline baseline_;
};

struct WeibullGParams {
  double alpha = 1.0;  // scale
  double beta = 1.0;   // shape
  double gamma = 1.0;  // scale of the baseline argument
  Baseline baseline = Baseline::exponential();

  void validate() const;
};

struct GompertzMakehamParams {
  double alpha = 1.0;   // initial mortality
  double beta = 1.0;    // mortality growth
  double lambda = 1.0;  // age-independent Makeham term

  void validate() const;
};

// Weibull-G: cumulative hazard H(x) = alpha * w(gamma x)^beta, sf = exp(-H).
// H is formed in log space, so the sf reaches exactly 0 once H > 745 while the
// hazard stays finite.
double wg_cumulative_hazard(const WeibullGParams& p, double x);
double wg_cdf(const WeibullGParams& p, double x);
double wg_sf(const WeibullGParams& p, double x);
double wg_hazard(const WeibullGParams& p, double x);
double wg_log_hazard(const WeibullGParams& p, double x);
double wg_pdf(const WeibullGParams& p, double x);
/// pdf / cdf. Throws DomainError where the cdf is 0.
double wg_reversed_hazard(const WeibullGParams& p, double x);

// Gompertz-Makeham: H(x) = lambda x + (alpha / beta)(exp(beta x) - 1),
// hazard = lambda + alpha exp(beta x).
double gm_cumulative_hazard(const GompertzMakehamParams& p, double x);
double gm_cdf(const GompertzMakehamParams& p, double x);
double gm_sf(const GompertzMakehamParams& p, double x);
double gm_hazard(const GompertzMakehamParams& p, double x);
double gm_pdf(const GompertzMakehamParams& p, double x);
/// pdf / cdf. Throws DomainError where the cdf is 0.
double gm_reversed_hazard(const GompertzMakehamParams& p, double x);

enum class Family { weibull_g, gompertz_makeham };

std::string to_string(Family family);

/// One component's lifetime law. Parameters are validated on construction and
/// immutable afterwards.
class LifetimeModel {
 public:
  LifetimeModel(WeibullGParams params);
  LifetimeModel(GompertzMakehamParams params);

  Family family() const noexcept;
  const WeibullGParams* weibull_g() const noexcept { return std::get_if<WeibullGParams>(&params_); }
  const GompertzMakehamParams* gompertz_makeham() const noexcept {
    return std::get_if<GompertzMakehamParams>(&params_);
  }

  double cumulative_hazard(double x) const;
  double cdf(double x) const;
  double sf(double x) const;
  double pdf(double x) const;
  double log_pdf(double x) const;
  double hazard(double x) const;
  double reversed_hazard(double x) const;

  std::string describe() const;

 private:
  std::variant<WeibullGParams, GompertzMakehamParams> params_;
};

/// Inverse cdf. Exponential-baseline Weibull-G uses the closed inverse; other
/// models bisect a bracket with Newton refinement on the cumulative hazard.
/// Throws UsageError unless 0 < u < 1, NumericError after 200 iterations.
double quantile(const LifetimeModel& model, double u);

/// Smallest x with sf(x) < threshold: doubling search for a bracket, then
/// bisection. `sf` must be non-increasing with sf(0) = 1.
double find_x_max(const ScalarFn& sf, double threshold = 1e-6);

double x_max(const LifetimeModel& model, double threshold = 1e-6);

}  // namespace stochord
