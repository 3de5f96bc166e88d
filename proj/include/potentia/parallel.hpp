#pragma once

// Deterministic work-sharing: work is cut into fixed-size chunks whose
// boundaries depend only on the problem size, never on the thread count, and
// per-chunk results are combined in ascending chunk order.  Outputs are
// therefore byte-identical whether POTENTIA_THREADS is 1 or 64.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "complex_plane.hpp"

namespace potentia {

/// Worker count: POTENTIA_THREADS when set (clamped to [1, hardware]),
/// otherwise the machine parallelism.
inline unsigned thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("POTENTIA_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v < static_cast<long>(hw) ? v : hw);
    return 1;
  }
  return hw;
}

/// Runs body(chunk_index, begin, end) over [0, n) cut into chunks of
/// `chunk_size` items.  Chunks may run on any thread; the caller owns a
/// per-chunk output slot, so no synchronization beyond the index counter is
/// needed.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunk_size, Body&& body) {
  if (n == 0) return;
  std::size_t chunks = (n + chunk_size - 1) / chunk_size;
  unsigned workers = thread_count();
  if (workers <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  pool.reserve(spawn);
  for (unsigned t = 1; t < spawn; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

/// Kahan-sums term(i) for i in [0, n) with a fixed chunked reduction order.
template <class Term>
double parallel_sum(std::size_t n, std::size_t chunk_size, Term&& term) {
  std::size_t chunks = n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(n, chunk_size, [&](std::size_t c, std::size_t b, std::size_t e) {
    KahanSum acc;
    for (std::size_t i = b; i < e; ++i) acc.add(term(i));
    partial[c] = acc.total();
  });
  KahanSum total;
  for (double v : partial) total.add(v);
  return total.total();
}

}  // namespace potentia
