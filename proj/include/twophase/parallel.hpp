#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace twophase {

/// Worker count for objective evaluation: TWOPHASE_THREADS caps it,
/// 0 or unset means one per hardware thread.
inline std::size_t evaluation_threads() {
  std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TWOPHASE_THREADS")) {
    try {
      const long requested = std::stol(env);
      if (requested > 0) return static_cast<std::size_t>(requested);
    } catch (...) {
    }
  }
  return hw;
}

/// Runs fn(chunk) for every chunk in [0, chunks). Chunk boundaries never
/// depend on the worker count, so callers that reduce per-chunk results in
/// chunk order get identical sums for any thread setting.
template <typename Fn>
void for_each_chunk(std::size_t chunks, Fn&& fn) {
  const std::size_t workers = std::min(evaluation_threads(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) fn(c);
    });
}

}  // namespace twophase
