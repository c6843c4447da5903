#include "stochord/order_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numeric.hpp"
#include "stochord/errors.hpp"
#include "stochord/random.hpp"

namespace stochord {

std::string to_string(Order order) {
  switch (order) {
    case Order::st:
      return "st";
    case Order::hr:
      return "hr";
    case Order::rh:
      return "rh";
    case Order::lr:
      return "lr";
  }
  return "?";
}

std::optional<Order> parse_order(std::string_view text) {
  if (text == "st") return Order::st;
  if (text == "hr") return Order::hr;
  if (text == "rh") return Order::rh;
  if (text == "lr") return Order::lr;
  return std::nullopt;
}

std::string to_string(GridPolicy policy) {
  return policy == GridPolicy::linear ? "linear" : "log-spaced";
}

Grid Grid::make(GridPolicy policy, std::size_t count, double x_max) {
  if (count < 16) throw UsageError("grid needs at least 16 points");
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw UsageError("grid x_max must be positive");
  Grid g;
  g.policy = policy;
  g.x_max = x_max;
  g.points.resize(count);
  const auto n = static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto kk = static_cast<double>(k);
    if (policy == GridPolicy::linear) {
      g.points[k] = x_max * (kk + 1.0) / n;
    } else {
      g.points[k] = x_max * std::pow(10.0, -6.0 * (1.0 - kk / (n - 1.0)));
    }
  }
  g.points.back() = x_max;
  return g;
}

Grid grid_for(const SystemSpec& f, const SystemSpec& g, std::size_t count, GridPolicy policy,
              std::optional<double> x_max) {
  const double end = x_max ? *x_max : std::max(system_x_max(f), system_x_max(g));
  return Grid::make(policy, count, end);
}

double Tolerance::at(double scale) const { return std::max(absolute, relative * std::abs(scale)); }

namespace {

constexpr double kRhCdfFloor = 1e-12;

struct Slack {
  std::vector<double> diff;
  std::vector<double> scale;
};

OrderVerdict summarize(Order order, const Grid& grid, const Curve& curve,
                       const std::vector<double>& scale, const Tolerance& tol, Execution exec) {
  OrderVerdict v;
  v.order = order;
  v.grid_count = grid.points.size();
  v.points_used = curve.x.size();
  v.x_max = grid.x_max;
  v.policy = grid.policy;

  if (curve.x.empty()) {
    v.holds = true;
    return v;
  }

  std::vector<double> excess(curve.diff.size());
  for (std::size_t k = 0; k < excess.size(); ++k) {
    const double e = curve.diff[k] + tol.at(scale[k]);
    excess[k] = std::isnan(e) ? -std::numeric_limits<double>::infinity() : e;
  }
  const auto worst = kernels::argmin(exec, excess);
  v.worst_x = curve.x[worst.index];
  v.margin = curve.diff[worst.index];
  v.tolerance = tol.at(scale[worst.index]);
  v.holds = worst.value >= 0.0;
  if (!v.holds) v.witness_x = v.worst_x;
  return v;
}

std::vector<double> pointwise_scale(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> s(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) s[k] = std::max(std::abs(a[k]), std::abs(b[k]));
  return s;
}

// Increments of a log ratio; the first point carries no increment.
void increments(const std::vector<double>& ratio, Curve& curve, std::vector<double>& scale) {
  curve.diff.assign(ratio.size(), 0.0);
  scale.assign(ratio.size(), 0.0);
  for (std::size_t k = 1; k < ratio.size(); ++k) {
    curve.diff[k] = ratio[k] - ratio[k - 1];
    scale[k] = std::max(std::abs(ratio[k]), std::abs(ratio[k - 1]));
  }
}

void keep(Curve& c, const std::vector<std::size_t>& idx) {
  const auto pick = [&idx](const std::vector<double>& v) {
    std::vector<double> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = v[idx[k]];
    return out;
  };
  c.x = pick(c.x);
  c.lhs = pick(c.lhs);
  c.rhs = pick(c.rhs);
}

Certification certify_st_impl(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                              const Tolerance& tol, Execution exec) {
  Curve c;
  c.x = grid.points;
  c.lhs = kernels::map(exec, c.x, [&f](double x) { return system_sf(f, x); });
  c.rhs = kernels::map(exec, c.x, [&g](double x) { return system_sf(g, x); });
  c.diff.resize(c.x.size());
  for (std::size_t k = 0; k < c.x.size(); ++k) c.diff[k] = c.rhs[k] - c.lhs[k];
  const auto scale = pointwise_scale(c.lhs, c.rhs);
  auto v = summarize(Order::st, grid, c, scale, tol, exec);
  return {v, std::move(c)};
}

Certification certify_hr_impl(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                              const Tolerance& tol, Execution exec) {
  Curve c;
  c.x = grid.points;
  if (f.structure == Structure::series && g.structure == Structure::series) {
    c.lhs = kernels::map(exec, c.x, [&f](double x) { return series_hazard(f, x); });
    c.rhs = kernels::map(exec, c.x, [&g](double x) { return series_hazard(g, x); });
    c.diff.resize(c.x.size());
    for (std::size_t k = 0; k < c.x.size(); ++k) c.diff[k] = c.lhs[k] - c.rhs[k];
    const auto scale = pointwise_scale(c.lhs, c.rhs);
    auto v = summarize(Order::hr, grid, c, scale, tol, exec);
    return {v, std::move(c)};
  }

  c.lhs = kernels::map(exec, c.x, [&f](double x) { return system_cumulative_hazard(f, x); });
  c.rhs = kernels::map(exec, c.x, [&g](double x) { return system_cumulative_hazard(g, x); });
  std::size_t used = c.x.size();
  for (std::size_t k = 0; k < c.x.size(); ++k) {
    if (!(c.lhs[k] <= detail::kMaxCumulativeHazard && c.rhs[k] <= detail::kMaxCumulativeHazard)) {
      used = k;
      break;
    }
  }
  c.x.resize(used);
  c.lhs.resize(used);
  c.rhs.resize(used);
  std::vector<double> log_ratio(used);
  for (std::size_t k = 0; k < used; ++k) log_ratio[k] = c.lhs[k] - c.rhs[k];
  std::vector<double> scale;
  increments(log_ratio, c, scale);
  auto v = summarize(Order::hr, grid, c, scale, tol, exec);
  v.truncated = used < grid.points.size();
  return {v, std::move(c)};
}

Certification certify_rh_impl(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                              const Tolerance& tol, Execution exec) {
  const auto cdf_f = kernels::map(exec, grid.points, [&f](double x) { return system_cdf(f, x); });
  const auto cdf_g = kernels::map(exec, grid.points, [&g](double x) { return system_cdf(g, x); });
  Curve c;
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    if (cdf_f[k] > kRhCdfFloor && cdf_g[k] > kRhCdfFloor) c.x.push_back(grid.points[k]);
  }
  c.lhs = kernels::map(exec, c.x, [&f](double x) { return system_reversed_hazard(f, x); });
  c.rhs = kernels::map(exec, c.x, [&g](double x) { return system_reversed_hazard(g, x); });
  c.diff.resize(c.x.size());
  for (std::size_t k = 0; k < c.x.size(); ++k) c.diff[k] = c.rhs[k] - c.lhs[k];
  const auto scale = pointwise_scale(c.lhs, c.rhs);
  auto v = summarize(Order::rh, grid, c, scale, tol, exec);
  return {v, std::move(c)};
}

Certification certify_lr_impl(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                              const Tolerance& tol, Execution exec) {
  Curve c;
  c.x = grid.points;
  c.lhs = kernels::map(exec, c.x, [&f](double x) { return system_log_pdf(f, x); });
  c.rhs = kernels::map(exec, c.x, [&g](double x) { return system_log_pdf(g, x); });
  std::vector<std::size_t> finite;
  for (std::size_t k = 0; k < c.x.size(); ++k) {
    if (std::isfinite(c.lhs[k]) && std::isfinite(c.rhs[k])) finite.push_back(k);
  }
  keep(c, finite);
  std::vector<double> log_ratio(c.x.size());
  for (std::size_t k = 0; k < c.x.size(); ++k) log_ratio[k] = c.rhs[k] - c.lhs[k];
  std::vector<double> scale;
  increments(log_ratio, c, scale);
  auto v = summarize(Order::lr, grid, c, scale, tol, exec);
  return {v, std::move(c)};
}

}  // namespace

Certification certify(Order order, const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                      const Tolerance& tol, Execution exec) {
  f.validate();
  g.validate();
  switch (order) {
    case Order::st:
      return certify_st_impl(f, g, grid, tol, exec);
    case Order::hr:
      return certify_hr_impl(f, g, grid, tol, exec);
    case Order::rh:
      return certify_rh_impl(f, g, grid, tol, exec);
    case Order::lr:
      return certify_lr_impl(f, g, grid, tol, exec);
  }
  throw UsageError("unknown order");
}

OrderVerdict certify_st(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol, Execution exec) {
  return certify(Order::st, f, g, grid, tol, exec).verdict;
}

OrderVerdict certify_hr(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol, Execution exec) {
  return certify(Order::hr, f, g, grid, tol, exec).verdict;
}

OrderVerdict certify_rh(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol, Execution exec) {
  return certify(Order::rh, f, g, grid, tol, exec).verdict;
}

OrderVerdict certify_lr(const SystemSpec& f, const SystemSpec& g, const Grid& grid,
                        const Tolerance& tol, Execution exec) {
  return certify(Order::lr, f, g, grid, tol, exec).verdict;
}

// ---------------------------------------------------------------------------
// Schur conditions

std::string to_string(SchurClass c) {
  switch (c) {
    case SchurClass::convex_consistent:
      return "convex-consistent";
    case SchurClass::concave_consistent:
      return "concave-consistent";
    case SchurClass::both:
      return "both";
    case SchurClass::neither:
      return "neither";
  }
  return "?";
}

namespace {

constexpr double kSymmetryRelTol = 1e-9;

double checked(double v) {
  if (!std::isfinite(v)) throw DomainError("Schur check: psi is not finite at an evaluated point");
  return v;
}

double fd_step(double a) { return 1e-6 * std::max(1.0, std::abs(a)); }

// Fisher-Yates on our own uniform_index so the permutation is reproducible.
std::vector<std::size_t> spot_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  auto rng = make_engine(0x5c4a7ULL);
  for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[uniform_index(rng, 0, k - 1)]);
  bool identity = true;
  for (std::size_t k = 0; k < n; ++k) identity = identity && p[k] == k;
  if (identity) std::rotate(p.begin(), p.begin() + 1, p.end());
  return p;
}

void require_symmetric(double base, double permuted) {
  if (std::abs(base - permuted) > kSymmetryRelTol * std::max(1.0, std::abs(base))) {
    throw UsageError("Schur check: psi is not symmetric under permutation of its arguments");
  }
}

SchurClass classify(const std::vector<SchurPair>& pairs, double tol) {
  bool convex = true;
  bool concave = true;
  for (const auto& p : pairs) {
    convex = convex && p.value >= -tol;
    concave = concave && p.value <= tol;
  }
  if (convex && concave) return SchurClass::both;
  if (convex) return SchurClass::convex_consistent;
  if (concave) return SchurClass::concave_consistent;
  return SchurClass::neither;
}

double pair_tolerance(double psi, const std::vector<double>& gradient, double spread) {
  double g = 0.0;
  for (double v : gradient) g = std::max(g, std::abs(v));
  return 1e-6 * spread * std::max({1.0, std::abs(psi), g});
}

}  // namespace

SchurDiagnostics schur_condition_check(const VectorFn& psi, std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 2) throw UsageError("Schur check needs at least two coordinates");
  std::vector<double> a(sample.begin(), sample.end());
  const double base = checked(psi(a));

  const auto perm = spot_permutation(n);
  std::vector<double> permuted(n);
  for (std::size_t k = 0; k < n; ++k) permuted[k] = a[perm[k]];
  require_symmetric(base, checked(psi(permuted)));

  SchurDiagnostics d;
  d.gradient.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = fd_step(a[i]);
    std::vector<double> up = a;
    std::vector<double> down = a;
    up[i] += h;
    down[i] -= h;
    d.gradient[i] = (checked(psi(up)) - checked(psi(down))) / (2.0 * h);
  }

  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d.pairs.push_back({i, j, (a[i] - a[j]) * (d.gradient[i] - d.gradient[j])});
      spread = std::max(spread, std::abs(a[i] - a[j]));
    }
  }
  d.tolerance = pair_tolerance(base, d.gradient, spread);
  d.classification = classify(d.pairs, d.tolerance);
  return d;
}

SchurDiagnostics schur_condition_check(const MatrixFn& psi, const ParamMatrix& sample) {
  const std::size_t n = sample.cols();
  const ParamMatrix::Storage& m = sample.values();
  const double base = checked(psi(sample));

  const auto perm = spot_permutation(n);
  ParamMatrix::Storage permuted(2, m.cols());
  for (std::size_t k = 0; k < n; ++k) permuted.col(k) = m.col(perm[k]);
  require_symmetric(base, checked(psi(ParamMatrix(permuted))));

  SchurDiagnostics d;
  d.gradient.resize(2 * n);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double h = fd_step(m(r, c));
      ParamMatrix::Storage up = m;
      ParamMatrix::Storage down = m;
      up(r, c) += h;
      down(r, c) -= h;
      d.gradient[r * n + c] =
          (checked(psi(ParamMatrix(up))) - checked(psi(ParamMatrix(down)))) / (2.0 * h);
    }
  }

  double spread = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      double value = 0.0;
      for (std::size_t r = 0; r < 2; ++r) {
        value += (m(r, j) - m(r, k)) * (d.gradient[r * n + j] - d.gradient[r * n + k]);
        spread = std::max(spread, std::abs(m(r, j) - m(r, k)));
      }
      d.pairs.push_back({j, k, value});
    }
  }
  d.tolerance = pair_tolerance(base, d.gradient, spread);
  d.classification = classify(d.pairs, d.tolerance);
  return d;
}

double h1(double x) { return std::exp(x) - x * std::exp(x) - 1.0; }

double h2(double x) { return x * std::exp(x) - 2.0 * std::exp(x) + x + 2.0; }

double g_alpha(double alpha, double z) { return alpha / std::expm1(alpha * z); }

}  // namespace stochord
