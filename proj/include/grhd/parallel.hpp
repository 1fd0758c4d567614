#pragma once

#include <cstddef>
#include <exception>

namespace grhd {

/// OpenMP-parallel loop over [0, n). Exceptions thrown by the body are
/// captured inside the parallel region (throwing across an OpenMP region is
/// undefined) and the first one is rethrown after the loop.
template <class F>
void par_for(std::size_t n, F&& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    if (err) continue;
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(grhd_par_for_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

/// Serial loop with the same signature; the reference implementations and a
/// few cheap setup loops use it.
template <class F>
void seq_for(std::size_t n, F&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace grhd
