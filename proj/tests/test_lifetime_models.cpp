#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracle_values.hpp"
#include "stochord/errors.hpp"
#include "stochord/lifetime_models.hpp"

using namespace stochord;

namespace {

WeibullGParams wexp(double a, double b, double g) { return {a, b, g, Baseline::exponential()}; }

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

std::vector<LifetimeModel> model_zoo() {
  return {LifetimeModel(wexp(1, 1, 1)),        LifetimeModel(wexp(4.8, 3, 2.5)),
          LifetimeModel(wexp(0.5, 0.7, 3)),    LifetimeModel(wexp(2, 2, 1)),
          LifetimeModel(GompertzMakehamParams{1, 1, 1}),
          LifetimeModel(GompertzMakehamParams{4.03, 2.005, 0.1}),
          LifetimeModel(GompertzMakehamParams{0.01, 0.2, 10})};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int k = 0; k < n; ++k) x[k] = lo * std::pow(hi / lo, double(k) / (n - 1));
  return x;
}

}  // namespace

TEST_CASE("wg_cdf closed form") {
  CHECK(wg_cdf(wexp(1, 1, 1), std::numbers::ln2) == doctest::Approx(oracle::wg_cdf_unit_ln2).epsilon(1e-14));
  CHECK(wg_cdf(wexp(3.2, 2.5, 0.7), 0.0) == 0.0);
  CHECK(wg_sf(wexp(3.2, 2.5, 0.7), 0.0) == 1.0);

  // The exponent is ~74: the cdf is 1 to double precision, the cumulative
  // hazard keeps the information.
  const auto p = wexp(4.8, 3, 2.5);
  CHECK(wg_cumulative_hazard(p, 0.5) == doctest::Approx(oracle::wg_cum_hazard_example_half).epsilon(1e-13));
  CHECK(std::abs(wg_cdf(p, 0.5) - (1 - std::exp(-oracle::wg_cum_hazard_example_half))) <= 1e-10);
  CHECK(wg_cdf(p, 0.5) >= 0.0);
  CHECK(wg_cdf(p, 0.5) <= 1.0);
}

TEST_CASE("wg hazard of the unit exponential case is e^x") {
  const auto p = wexp(1, 1, 1);
  for (double x : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 40.0}) {
    CHECK(rel_close(wg_hazard(p, x), std::exp(x), 1e-14));
  }
}

TEST_CASE("wg reversed hazard needs positive cdf") {
  CHECK_THROWS_AS(wg_reversed_hazard(wexp(1, 2, 1), 0.0), DomainError);
  CHECK(wg_reversed_hazard(wexp(1, 2, 1), 0.3) > 0.0);
}

TEST_CASE("wg density mass against quadrature") {
  const auto p = wexp(2, 2, 1);
  // composite Simpson on (0, 0.5]
  const int n = 2000;
  const double h = 0.5 / n;
  double s = wg_pdf(p, 0.0) + wg_pdf(p, 0.5);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * wg_pdf(p, k * h);
  CHECK(s * h / 3 == doctest::Approx(oracle::wexp_222_mass_to_half).epsilon(1e-9));
  CHECK(wg_cdf(p, 0.5) == doctest::Approx(oracle::wexp_222_mass_to_half).epsilon(1e-14));

  // the whole density integrates to one over (0, X_max]
  const double xm = x_max(LifetimeModel(p));
  const double h2 = xm / n;
  double t = wg_pdf(p, 0.0) + wg_pdf(p, xm);
  for (int k = 1; k < n; ++k) t += (k % 2 ? 4.0 : 2.0) * wg_pdf(p, k * h2);
  CHECK(std::abs(t * h2 / 3 - 1.0) < 1e-4);
}

TEST_CASE("gompertz-makeham closed forms") {
  const GompertzMakehamParams p{1, 1, 1};
  CHECK(gm_sf(p, 1.0) == doctest::Approx(oracle::gm_sf_unit_at_1).epsilon(1e-14));
  CHECK(gm_cdf(p, 0.0) == 0.0);
  const GompertzMakehamParams q{2.5, 0.3, 0.7};
  CHECK(gm_hazard(q, 0.0) == doctest::Approx(3.2).epsilon(1e-15));
  for (double x : log_grid(1e-4, 30, 64)) {
    CHECK(rel_close(gm_hazard(q, x), 0.7 + 2.5 * std::exp(0.3 * x), 1e-12));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS(LifetimeModel(wexp(0, 1, 1)));
  CHECK_THROWS(LifetimeModel(wexp(1, -1, 1)));
  CHECK_THROWS(LifetimeModel(wexp(1, 1, std::nan(""))));
  CHECK_THROWS(LifetimeModel(GompertzMakehamParams{1, 0, 1}));
  CHECK_THROWS(LifetimeModel(GompertzMakehamParams{1, 1, -0.5}));
}

TEST_CASE("quantile") {
  const LifetimeModel unit(wexp(1, 1, 1));
  for (double u : {0.1, 0.5, 0.9}) CHECK(std::abs(unit.cdf(quantile(unit, u)) - u) <= 1e-10);
  CHECK(quantile(unit, 1 - std::exp(-1.0)) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
  CHECK(quantile(unit, 0.5) == doctest::Approx(oracle::wexp_median_unit).epsilon(1e-14));

  double prev = quantile(unit, 0.1);
  for (double u : {1e-2, 1e-4, 1e-8, 1e-12}) {
    const double x = quantile(unit, u);
    CHECK(x > 0.0);
    CHECK(x < prev);
    prev = x;
  }

  CHECK_THROWS_AS(quantile(unit, 0.0), UsageError);
  CHECK_THROWS_AS(quantile(unit, 1.0), UsageError);

  for (const auto& m : model_zoo()) {
    for (double u : {1e-9, 0.01, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9}) {
      const double x = quantile(m, u);
      CHECK(std::abs(m.cdf(x) - u) <= 1e-12);
    }
  }
}

TEST_CASE("custom baseline") {
  // Standard exponential supplied through the generic hook must agree with
  // the built-in exact baseline.
  const auto custom = Baseline::custom([](double t) { return -std::expm1(-t); },
                                       [](double t) { return std::exp(-t); });
  const WeibullGParams a{1.7, 2.2, 0.8, custom};
  const WeibullGParams b = wexp(1.7, 2.2, 0.8);
  for (double x : {0.05, 0.4, 1.3, 2.0}) {
    CHECK(rel_close(wg_cdf(a, x), wg_cdf(b, x), 1e-12));
    CHECK(rel_close(wg_hazard(a, x), wg_hazard(b, x), 1e-9));
  }
  const OddsFn w(custom);
  const OddsFn exact(Baseline::exponential());
  for (double t : {0.3, 1.0, 2.5}) {
    CHECK(rel_close(w.d1(t), exact.d1(t), 1e-9));
    CHECK(rel_close(w.d2(t), exact.d2(t), 1e-5));
    CHECK(rel_close(w.d3(t), exact.d3(t), 1e-3));
  }
  CHECK(quantile(LifetimeModel(a), 0.4) == doctest::Approx(quantile(LifetimeModel(b), 0.4)).epsilon(1e-10));
}

TEST_CASE("overflow policy") {
  // GM's double exponential: sf reaches exactly zero, hazard stays finite.
  const GompertzMakehamParams p{4.8, 2.5, 1};
  CHECK(gm_sf(p, 10.0) == 0.0);
  CHECK(std::isfinite(gm_hazard(p, 10.0)));
  const auto q = wexp(4.8, 3, 2.5);
  CHECK(wg_sf(q, 5.0) == 0.0);
  CHECK(std::isfinite(wg_log_hazard(q, 5.0)));
}

TEST_CASE("x_max is the first point with sf below 1e-6") {
  for (const auto& m : model_zoo()) {
    const double xm = x_max(m);
    CHECK(m.sf(xm) < 1e-6);
    CHECK(m.sf(xm * (1 - 1e-9)) >= 1e-6 * (1 - 1e-6));
  }
}

TEST_CASE("pointwise identities on a log grid") {
  for (const auto& m : model_zoo()) {
    CAPTURE(m.describe());
    const double xm = x_max(m);
    double prev = 0.0;
    for (double x : log_grid(xm * 1e-6, xm, 256)) {
      const double c = m.cdf(x);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      CHECK(c >= prev);
      prev = c;
      CHECK(std::abs(m.sf(x) - (1 - c)) <= 1e-15);
      CHECK(m.pdf(x) >= 0.0);
      CHECK(rel_close(m.pdf(x), m.hazard(x) * m.sf(x), 1e-12));
      if (c > 1e-300) CHECK(rel_close(m.reversed_hazard(x), m.pdf(x) / c, 1e-12));
    }
  }
}

TEST_CASE("pdf matches the derivative of the cdf") {
  for (const auto& m : model_zoo()) {
    CAPTURE(m.describe());
    const double xm = x_max(m);
    for (int k = 1; k <= 64; ++k) {
      const double x = xm * k / 65.0;
      const double h = 1e-6 * std::max(1.0, x);
      const double fd = (m.cdf(x + h) - m.cdf(x - h)) / (2 * h);
      CHECK(std::abs(fd - m.pdf(x)) <= std::max(1e-6, 1e-5 * std::abs(m.pdf(x))));
    }
  }
}

TEST_CASE("hazard matches the derivative of the cumulative hazard") {
  for (const auto& m : model_zoo()) {
    CAPTURE(m.describe());
    const double xm = x_max(m);
    for (int k = 1; k <= 32; ++k) {
      const double x = xm * k / 33.0;
      const double h = 1e-5 * x;
      const double fd = (m.cumulative_hazard(x + h) - m.cumulative_hazard(x - h)) / (2 * h);
      CHECK(rel_close(m.hazard(x), fd, 1e-7));
    }
  }
}

TEST_CASE("exponential odds derivatives are non-negative") {
  const OddsFn w(Baseline::exponential());
  for (double t : log_grid(1e-8, 50, 200)) {
    CHECK(w(t) >= 0.0);
    CHECK(w.d1(t) >= 0.0);
    CHECK(w.d2(t) >= 0.0);
    CHECK(w.d3(t) >= 0.0);
    CHECK(rel_close(w(t), std::expm1(t), 1e-15));
  }
}
