#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace exmine {

// Splits [0, n) into fixed-size chunks, maps each chunk to an R on a worker
// pool, and returns the per-chunk results in chunk order. Chunk boundaries
// depend only on n and chunk_size, so any later reduction over the returned
// vector is independent of worker count and scheduling.
//
// fn signature: R fn(size_t begin, size_t end)
template <typename R, typename Fn>
std::vector<R> parallel_map_chunks(size_t n, size_t chunk_size, unsigned workers, Fn&& fn) {
  if (chunk_size == 0) chunk_size = 1;
  size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<R> results(n_chunks);
  if (n_chunks == 0) return results;
  if (workers == 0) workers = 1;
  if (workers == 1 || n_chunks == 1) {
    for (size_t c = 0; c < n_chunks; ++c) {
      size_t b = c * chunk_size;
      size_t e = std::min(n, b + chunk_size);
      results[c] = fn(b, e);
    }
    return results;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  unsigned n_threads = static_cast<unsigned>(std::min<size_t>(workers, n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        size_t b = c * chunk_size;
        size_t e = std::min(n, b + chunk_size);
        try {
          results[c] = fn(b, e);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

inline unsigned default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace exmine
