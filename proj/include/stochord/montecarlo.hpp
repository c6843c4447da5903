#pragma once

// Inverse-transform sampling and Kolmogorov-Smirnov checks against the
// closed-form distribution functions.
//
// Stream rule: a batch drawn with seed s uses make_engine(s, 0); component k
// of a simulated system uses make_engine(s, k). Draws are made sequentially
// within a stream, so every batch is reproducible from its seed alone.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stochord/grid_kernels.hpp"
#include "stochord/lifetime_models.hpp"
#include "stochord/system_statistics.hpp"

namespace stochord {

struct SampleBatch {
  std::string model;  // describe() of the generating model
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // ascending
};

/// count i.i.d. draws x = quantile(u), u uniform on (0, 1).
/// Throws UsageError for count == 0; quantile failures propagate.
SampleBatch sample(const LifetimeModel& model, std::size_t count, std::uint64_t seed);

/// sup |ECDF - cdf| over the sorted sample.
double ks_distance(const std::vector<double>& sorted, const std::function<double(double)>& cdf);
double ks_distance(const SampleBatch& batch, const LifetimeModel& model);

struct SystemCheck {
  Structure structure = Structure::series;
  std::size_t components = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double ks = 0.0;
  std::vector<double> values;  // sorted system lifetimes
};

/// Simulates every component, takes the min (series) or max (parallel) per
/// draw and compares the ECDF with system_cdf. Component streams are
/// independent, so they may be sampled in parallel without changing the
/// result. Throws UsageError for count < 1000.
SystemCheck empirical_system_check(const SystemSpec& spec, std::size_t count, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

}  // namespace stochord
