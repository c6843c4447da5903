#include "stochord/lifetime_models.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "numeric.hpp"
#include "stochord/errors.hpp"

namespace stochord {

using detail::kInf;

// ---------------------------------------------------------------------------
// Baseline / OddsFn

Baseline Baseline::exponential() { return Baseline(BaselineKind::exponential_standard, nullptr); }

Baseline Baseline::custom(ScalarFn cdf, ScalarFn pdf, ScalarFn odds_d2, ScalarFn odds_d3) {
  if (!cdf || !pdf) throw UsageError("custom baseline needs both a cdf and a pdf");
  auto c = std::make_shared<Custom>(
      Custom{std::move(cdf), std::move(pdf), std::move(odds_d2), std::move(odds_d3)});
  return Baseline(BaselineKind::user_supplied, std::move(c));
}

double Baseline::cdf(double t) const {
  if (kind_ == BaselineKind::exponential_standard) return t <= 0.0 ? 0.0 : -std::expm1(-t);
  return custom_->cdf(t);
}

double Baseline::pdf(double t) const {
  if (kind_ == BaselineKind::exponential_standard) return t < 0.0 ? 0.0 : std::exp(-t);
  return custom_->pdf(t);
}

double OddsFn::operator()(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return t <= 0.0 ? 0.0 : std::expm1(t);
  const double f = baseline_.cdf(t);
  if (f >= 1.0) return kInf;
  return f / (1.0 - f);
}

double OddsFn::log_value(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return detail::log_expm1(t);
  const double f = baseline_.cdf(t);
  if (f <= 0.0) return -kInf;
  if (f >= 1.0) return kInf;
  return std::log(f) - std::log1p(-f);
}

double OddsFn::d1(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return std::exp(t);
  const double f = baseline_.cdf(t);
  if (f >= 1.0) return kInf;
  const double s = 1.0 - f;
  return baseline_.pdf(t) / (s * s);
}

double OddsFn::log_d1(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return t;
  const double f = baseline_.cdf(t);
  if (f >= 1.0) return kInf;
  return std::log(baseline_.pdf(t)) - 2.0 * std::log1p(-f);
}

double OddsFn::fd_step(double t) const {
  const double h = 1e-5 * std::max(1.0, t);
  return t > 0.0 ? std::min(h, 0.5 * t) : h;
}

double OddsFn::d2(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return std::exp(t);
  if (baseline_.custom_->odds_d2) return baseline_.custom_->odds_d2(t);
  const double h = fd_step(t);
  return (d1(t + h) - d1(t - h)) / (2.0 * h);
}

double OddsFn::d3(double t) const {
  if (baseline_.kind() == BaselineKind::exponential_standard) return std::exp(t);
  if (baseline_.custom_->odds_d3) return baseline_.custom_->odds_d3(t);
  const double h = fd_step(t);
  return (d1(t + h) - 2.0 * d1(t) + d1(t - h)) / (h * h);
}

// ---------------------------------------------------------------------------
// Parameter validation

namespace {

void require_positive(double v, const char* family, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << family << " parameter " << name << " must be a finite positive number, got " << v;
    throw UsageError(os.str());
  }
}

}  // namespace

void WeibullGParams::validate() const {
  require_positive(alpha, "Weibull-G", "alpha");
  require_positive(beta, "Weibull-G", "beta");
  require_positive(gamma, "Weibull-G", "gamma");
}

void GompertzMakehamParams::validate() const {
  require_positive(alpha, "Gompertz-Makeham", "alpha");
  require_positive(beta, "Gompertz-Makeham", "beta");
  require_positive(lambda, "Gompertz-Makeham", "lambda");
}

// ---------------------------------------------------------------------------
// Weibull-G

double wg_cumulative_hazard(const WeibullGParams& p, double x) {
  if (x <= 0.0) return 0.0;
  const double log_w = OddsFn(p.baseline).log_value(p.gamma * x);
  if (log_w == -kInf) return 0.0;
  if (log_w == kInf) return kInf;
  return std::exp(std::log(p.alpha) + p.beta * log_w);
}

double wg_cdf(const WeibullGParams& p, double x) {
  return detail::cdf_from_cumulative_hazard(wg_cumulative_hazard(p, x));
}

double wg_sf(const WeibullGParams& p, double x) {
  return detail::sf_from_cumulative_hazard(wg_cumulative_hazard(p, x));
}

double wg_log_hazard(const WeibullGParams& p, double x) {
  const OddsFn w(p.baseline);
  const double t = p.gamma * std::max(x, 0.0);
  // beta == 1 drops the w^(beta-1) factor entirely, also at t = 0.
  const double shape_term = p.beta == 1.0 ? 0.0 : (p.beta - 1.0) * w.log_value(t);
  return std::log(p.alpha * p.beta * p.gamma) + shape_term + w.log_d1(t);
}

double wg_hazard(const WeibullGParams& p, double x) { return std::exp(wg_log_hazard(p, x)); }

double wg_pdf(const WeibullGParams& p, double x) {
  const double h = wg_cumulative_hazard(p, x);
  if (h == kInf) return 0.0;
  return std::exp(wg_log_hazard(p, x) - h);
}

double wg_reversed_hazard(const WeibullGParams& p, double x) {
  const double h = wg_cumulative_hazard(p, x);
  if (h <= 0.0) throw DomainError("Weibull-G reversed hazard requested where the cdf is 0");
  return std::exp(wg_log_hazard(p, x) - detail::log_expm1(h));
}

// ---------------------------------------------------------------------------
// Gompertz-Makeham

double gm_cumulative_hazard(const GompertzMakehamParams& p, double x) {
  if (x <= 0.0) return 0.0;
  return p.lambda * x + (p.alpha / p.beta) * std::expm1(p.beta * x);
}

double gm_cdf(const GompertzMakehamParams& p, double x) {
  return detail::cdf_from_cumulative_hazard(gm_cumulative_hazard(p, x));
}

double gm_sf(const GompertzMakehamParams& p, double x) {
  return detail::sf_from_cumulative_hazard(gm_cumulative_hazard(p, x));
}

double gm_hazard(const GompertzMakehamParams& p, double x) {
  return p.lambda + p.alpha * std::exp(p.beta * std::max(x, 0.0));
}

double gm_pdf(const GompertzMakehamParams& p, double x) {
  const double h = gm_cumulative_hazard(p, x);
  if (h == kInf) return 0.0;
  return std::exp(std::log(gm_hazard(p, x)) - h);
}

double gm_reversed_hazard(const GompertzMakehamParams& p, double x) {
  const double h = gm_cumulative_hazard(p, x);
  if (h <= 0.0) throw DomainError("Gompertz-Makeham reversed hazard requested where the cdf is 0");
  return std::exp(std::log(gm_hazard(p, x)) - detail::log_expm1(h));
}

// ---------------------------------------------------------------------------
// LifetimeModel

std::string to_string(Family family) {
  return family == Family::weibull_g ? "weibull-g" : "gompertz-makeham";
}

LifetimeModel::LifetimeModel(WeibullGParams params) : params_(std::move(params)) {
  std::get<WeibullGParams>(params_).validate();
}

LifetimeModel::LifetimeModel(GompertzMakehamParams params) : params_(params) {
  params.validate();
}

Family LifetimeModel::family() const noexcept {
  return params_.index() == 0 ? Family::weibull_g : Family::gompertz_makeham;
}

namespace {

template <class Wg, class Gm>
double dispatch(const std::variant<WeibullGParams, GompertzMakehamParams>& v, Wg wg, Gm gm) {
  if (const auto* p = std::get_if<WeibullGParams>(&v)) return wg(*p);
  return gm(std::get<GompertzMakehamParams>(v));
}

}  // namespace

double LifetimeModel::cumulative_hazard(double x) const {
  return dispatch(
      params_, [x](const auto& p) { return wg_cumulative_hazard(p, x); },
      [x](const auto& p) { return gm_cumulative_hazard(p, x); });
}

double LifetimeModel::cdf(double x) const {
  return detail::cdf_from_cumulative_hazard(cumulative_hazard(x));
}

double LifetimeModel::sf(double x) const {
  return detail::sf_from_cumulative_hazard(cumulative_hazard(x));
}

double LifetimeModel::pdf(double x) const {
  return dispatch(
      params_, [x](const auto& p) { return wg_pdf(p, x); },
      [x](const auto& p) { return gm_pdf(p, x); });
}

double LifetimeModel::log_pdf(double x) const {
  return dispatch(
      params_, [x](const auto& p) { return wg_log_hazard(p, x) - wg_cumulative_hazard(p, x); },
      [x](const auto& p) { return std::log(gm_hazard(p, x)) - gm_cumulative_hazard(p, x); });
}

double LifetimeModel::hazard(double x) const {
  return dispatch(
      params_, [x](const auto& p) { return wg_hazard(p, x); },
      [x](const auto& p) { return gm_hazard(p, x); });
}

double LifetimeModel::reversed_hazard(double x) const {
  return dispatch(
      params_, [x](const auto& p) { return wg_reversed_hazard(p, x); },
      [x](const auto& p) { return gm_reversed_hazard(p, x); });
}

std::string LifetimeModel::describe() const {
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  if (const auto* p = weibull_g()) {
    return "W-G(alpha=" + num(p->alpha) + ", beta=" + num(p->beta) + ", gamma=" + num(p->gamma) + ", " +
           (p->baseline.kind() == BaselineKind::exponential_standard ? "exponential" : "custom") + ")";
  }
  const auto* q = gompertz_makeham();
  return "GM(alpha=" + num(q->alpha) + ", beta=" + num(q->beta) + ", lambda=" + num(q->lambda) + ")";
}

// ---------------------------------------------------------------------------
// quantile / support end

double quantile(const LifetimeModel& model, double u) {
  if (!(u > 0.0 && u < 1.0)) throw UsageError("quantile needs 0 < u < 1");
  const double target = -std::log1p(-u);

  if (const auto* p = model.weibull_g();
      p != nullptr && p->baseline.kind() == BaselineKind::exponential_standard) {
    return std::log1p(std::pow(target / p->alpha, 1.0 / p->beta)) / p->gamma;
  }

  // Solve H(x) = -log(1 - u) on a doubling bracket; H is strictly increasing.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; model.cumulative_hazard(hi) < target; ++i) {
    if (i > 1100) throw NumericError("quantile: no upper bracket found", lo, hi);
    lo = hi;
    hi *= 2.0;
  }

  constexpr int kMaxIterations = 200;
  const double tol = 1e-14 * target;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double diff = model.cumulative_hazard(x) - target;
    if (std::abs(diff) <= tol) return x;
    if (diff < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return x;
    double next = x - diff / model.hazard(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw NumericError("quantile: no convergence after 200 iterations", lo, hi);
}

double find_x_max(const ScalarFn& sf, double threshold) {
  double lo = 0.0;
  double hi = 1.0;
  if (sf(hi) < threshold) {
    lo = 0.5;
    for (int i = 0; sf(lo) < threshold; ++i) {
      if (i > 1100) throw NumericError("x_max: sf below threshold arbitrarily close to 0", 0.0, lo);
      hi = lo;
      lo *= 0.5;
    }
  } else {
    for (int i = 0; sf(hi) >= threshold; ++i) {
      if (i > 1100) throw NumericError("x_max: sf never drops below threshold", lo, hi);
      lo = hi;
      hi *= 2.0;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sf(mid) < threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double x_max(const LifetimeModel& model, double threshold) {
  return find_x_max([&model](double x) { return model.sf(x); }, threshold);
}

}  // namespace stochord
