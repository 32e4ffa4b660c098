#pragma once

#include <cstddef>
#include <exception>
#include <limits>

namespace uqtb {

//! Selects between the OpenMP loop and the serial reference loop. Both paths
//! compute every element independently and combine them in index order, so
//! results are bit-identical.
enum class Execution { serial, parallel };

//! Runs body(i) for i in [0, n). Under Execution::parallel the iterations are
//! shared across OpenMP threads; if any throw, the exception from the lowest
//! failing index is rethrown once the loop finishes, which is what the serial
//! loop would have thrown.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& body)
{
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::size_t first_failure = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(uqtb_for_each_index)
      if (static_cast<std::size_t>(i) < first_failure) {
        first_failure = static_cast<std::size_t>(i);
        failure = std::current_exception();
      }
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace uqtb
