#pragma once

/// @file parallel.hpp
/// @brief Loop drivers for pointwise kernels.
///
/// Every data-parallel loop in the library goes through these drivers. The
/// serial driver is the reference: it fixes the evaluation and summation order
/// so runs are bit-reproducible. The OpenMP driver runs the same per-point
/// lambda on a parallel for; pointwise results are identical, reductions agree
/// with the reference to rounding.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace gradflow {

enum class Execution { Serial, OpenMP };

template <typename Fn>
void for_each_point(Execution exec, std::size_t n, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// Pointwise loop whose body returns an event count (e.g. clamp violations).
template <typename Fn>
std::int64_t count_points(Execution exec, std::size_t n, Fn&& fn) {
  std::int64_t total = 0;
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) total += fn(i);
    return total;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::ptrdiff_t i = 0; i < count; ++i) total += fn(static_cast<std::size_t>(i));
  return total;
}

inline double sum(Execution exec, std::span<const double> values) {
  double total = 0.0;
  if (exec == Execution::Serial) {
    for (double v : values) total += v;
    return total;
  }
  const auto count = static_cast<std::ptrdiff_t>(values.size());
  const double* data = values.data();
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::ptrdiff_t i = 0; i < count; ++i) total += data[i];
  return total;
}

inline double max_value(Execution exec, std::span<const double> values) {
  double best = -std::numeric_limits<double>::infinity();
  if (exec == Execution::Serial) {
    for (double v : values) best = std::max(best, v);
    return best;
  }
  const auto count = static_cast<std::ptrdiff_t>(values.size());
  const double* data = values.data();
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < count; ++i) best = std::max(best, data[i]);
  return best;
}

inline double min_value(Execution exec, std::span<const double> values) {
  double best = std::numeric_limits<double>::infinity();
  if (exec == Execution::Serial) {
    for (double v : values) best = std::min(best, v);
    return best;
  }
  const auto count = static_cast<std::ptrdiff_t>(values.size());
  const double* data = values.data();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::ptrdiff_t i = 0; i < count; ++i) best = std::min(best, data[i]);
  return best;
}

/// Sets the OpenMP team size; returns the execution mode matching it
/// (one thread selects the serial reference path).
Execution configure_threads(int threads);

}  // namespace gradflow
