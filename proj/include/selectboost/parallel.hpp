#pragma once

#include <exception>
#include <vector>

namespace selectboost {

// Number of OpenMP worker threads; 1 when built without OpenMP.
int max_threads();
void set_threads(int threads);

namespace detail {

// Runs body(i) for i in [0, count), on OpenMP threads when `parallel` is set.
// Exceptions are captured per index and the lowest-index one is rethrown after
// the loop, so failures are reported identically for any schedule.
template <typename Body>
void for_each_index(int count, bool parallel, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count > 0 ? count : 0));
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace detail
}  // namespace selectboost
