#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tordec::par {

enum class Mode { Serial, OpenMP };

// Global execution mode for sweep kernels. The serial path is the reference
// implementation; both must produce identical results.
Mode& mode();

inline const char* mode_name(Mode m) { return m == Mode::Serial ? "serial" : "openmp"; }

// Runs f(i) for i in [0, n). Exceptions are captured and rethrown after the
// loop so they never cross an OpenMP region boundary.
template <class F>
void for_index(std::size_t n, F&& f) {
#ifdef _OPENMP
  if (mode() == Mode::OpenMP) {
    std::exception_ptr err;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

// Deterministic parallel map: slot i holds f(i) regardless of schedule.
template <class T, class F>
std::vector<T> map_index(std::size_t n, F&& f) {
  std::vector<T> out(n);
  for_index(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace tordec::par
