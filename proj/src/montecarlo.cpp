#include "stochord/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "stochord/errors.hpp"
#include "stochord/random.hpp"

namespace stochord {

namespace {

std::vector<double> draw(const LifetimeModel& model, std::size_t count, std::uint64_t seed,
                         std::uint64_t stream) {
  auto rng = make_engine(seed, stream);
  std::vector<double> out(count);
  for (auto& v : out) v = quantile(model, uniform01(rng));
  return out;
}

}  // namespace

SampleBatch sample(const LifetimeModel& model, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw UsageError("sample count must be at least 1");
  SampleBatch b{model.describe(), count, seed, draw(model, count, seed, 0)};
  std::sort(b.values.begin(), b.values.end());
  return b;
}

double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_distance(const SampleBatch& batch, const LifetimeModel& model) {
  return ks_distance(batch.values, [&](double x) { return model.cdf(x); });
}

SystemCheck empirical_system_check(const SystemSpec& spec, std::size_t count, std::uint64_t seed,
                                   Execution exec) {
  spec.validate();
  if (count < 1000) throw UsageError("system check needs at least 1000 draws");

  std::vector<std::vector<double>> columns(spec.size());
  kernels::for_each_index(exec, spec.size(), [&](std::size_t k) {
    columns[k] = draw(spec.components[k], count, seed, k);
  });

  SystemCheck r{spec.structure, spec.size(), count, seed, 0.0, columns.front()};
  for (std::size_t k = 1; k < columns.size(); ++k) {
    for (std::size_t i = 0; i < count; ++i) {
      r.values[i] = spec.structure == Structure::series ? std::min(r.values[i], columns[k][i])
                                                        : std::max(r.values[i], columns[k][i]);
    }
  }
  std::sort(r.values.begin(), r.values.end());
  r.ks = ks_distance(r.values, [&](double x) { return system_cdf(spec, x); });
  return r;
}

}  // namespace stochord
