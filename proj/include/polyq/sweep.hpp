#pragma once

#include <cstdint>
#include <exception>
#include <vector>

namespace polyq {

enum class ExecMode { Serial, Parallel };

// Evaluates fn(i) for i in [0, count) and returns the results in index order.
//
// Parallel mode fans the indices out across OpenMP threads. Every slot is
// written by exactly one iteration and all aggregation happens on the
// returned vector afterwards, so serial and parallel runs produce identical
// results — sample i must derive any randomness it needs from its own
// substream, never from a shared generator.
template <typename T, typename Fn>
std::vector<T> map_indexed(std::uint64_t count, ExecMode mode, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(count));
  if (mode == ExecMode::Serial) {
    for (std::uint64_t i = 0; i < count; ++i)
      out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  // Exceptions must not unwind out of the worker loop; keep the first one
  // and rethrow after the region ends.
  std::exception_ptr pending = nullptr;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(polyq_map_indexed_error)
      if (!pending) pending = std::current_exception();
    }
  }
  if (pending) std::rethrow_exception(pending);
  return out;
}

}  // namespace polyq
