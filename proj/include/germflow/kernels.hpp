#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace germflow {

/// How independent per-index work is scheduled. Both policies produce the
/// same bits: each index writes only its own slot and reductions happen
/// afterwards in index order.
enum class ExecPolicy { Serial, Parallel };

/// Calls body(i) for i in [0, n). Under Parallel the loop is an OpenMP
/// `parallel for`; an exception thrown by any index is captured and the one
/// from the lowest failing index is rethrown after the loop.
template <class Body>
void for_each_index(ExecPolicy policy, std::size_t n, Body&& body) {
  if (policy == ExecPolicy::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace germflow
