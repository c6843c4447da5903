#pragma once

// Data-parallel maps over evaluation grids. Every kernel has a serial
// reference next to its OpenMP version; both produce bit-identical output
// because each point is evaluated independently and reductions break ties by
// the lowest index.

#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <vector>

namespace stochord {

enum class Execution { serial, parallel };

namespace kernels {

template <class F>
std::vector<double> map_serial(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) out[k] = f(xs[k]);
  return out;
}

template <class F>
std::vector<double> map_parallel(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = f(xs[k]);
    } catch (...) {
#pragma omp critical(stochord_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

template <class F>
std::vector<double> map(Execution exec, std::span<const double> xs, F&& f) {
  return exec == Execution::parallel ? map_parallel(xs, std::forward<F>(f))
                                     : map_serial(xs, std::forward<F>(f));
}

struct Extremum {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

inline Extremum argmin_serial(std::span<const double> v) {
  Extremum best;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < best.value) best = {v[k], k};
  }
  return best;
}

inline Extremum argmin_parallel(std::span<const double> v) {
  Extremum best;
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel
  {
    Extremum local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      if (v[idx] < local.value) local = {v[idx], idx};
    }
#pragma omp critical(stochord_argmin)
    if (local.value < best.value || (local.value == best.value && local.index < best.index)) {
      best = local;
    }
  }
  return best;
}

inline Extremum argmin(Execution exec, std::span<const double> v) {
  return exec == Execution::parallel ? argmin_parallel(v) : argmin_serial(v);
}

/// Applies `body(i)` for i in [0, count). Exceptions are captured and the
/// first one is rethrown after the loop.
template <class Body>
void for_each_index(Execution exec, std::size_t count, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(stochord_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace kernels
}  // namespace stochord
