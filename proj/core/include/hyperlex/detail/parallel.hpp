#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hyperlex::detail {

// Worker count: HYPERLEX_THREADS caps it when set, otherwise the
// hardware concurrency. Always at least 1.
inline std::size_t worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("HYPERLEX_THREADS")) {
    char* rest = nullptr;
    const long parsed = std::strtol(env, &rest, 10);
    if (rest != env && parsed > 0 && static_cast<std::size_t>(parsed) < n) {
      n = static_cast<std::size_t>(parsed);
    }
  }
  return n;
}

// Splits [0, n) into contiguous chunks, one worker per chunk. The body
// receives [begin, end) and must only touch state disjoint per chunk;
// callers merge results afterwards.
template <typename Body>
void parallel_chunks(std::size_t n, const Body& body) {
  const std::size_t workers = std::min(worker_count(), n == 0 ? 1 : n);
  if (workers <= 1 || n < 2) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace hyperlex::detail
