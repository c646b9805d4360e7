#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace modratio {

// Worker count used when a caller does not pass one explicitly. Read from
// MODRATIO_WORKERS; falls back to 1.
inline unsigned default_workers() {
  if (const char* env = std::getenv("MODRATIO_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    } catch (...) {
    }
  }
  return 1;
}

// Neumaier summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexAccumulator {
public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Runs body(i) for i in [begin, end) on up to `workers` threads. Indices are
// handed out in contiguous blocks; body must only write to slots it owns.
template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, unsigned workers, Body&& body) {
  if (end <= begin) return;
  const std::int64_t total = end - begin;
  workers = std::max(1u, workers);
  if (workers == 1 || total < 2) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  const std::int64_t block = std::max<std::int64_t>(1, total / (8 * static_cast<std::int64_t>(workers)));
  std::atomic<std::int64_t> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::int64_t lo = next.fetch_add(block);
      if (lo >= end) return;
      const std::int64_t hi = std::min(end, lo + block);
      try {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(end);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawned = static_cast<unsigned>(std::min<std::int64_t>(workers, total)) - 1;
  pool.reserve(spawned);
  for (unsigned w = 0; w < spawned; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Splits [begin, end) into fixed-size chunks, evaluates chunk_fn(lo, hi) for
// each (possibly concurrently), then combines the chunk results with a
// pairwise tree in chunk order. Chunk boundaries do not depend on the worker
// count, so the result is bit-identical for any number of workers.
template <class T, class ChunkFn, class Combine>
T chunked_reduce(std::int64_t begin, std::int64_t end, std::int64_t chunk, unsigned workers,
                 ChunkFn&& chunk_fn, Combine&& combine, T identity) {
  if (end <= begin) return identity;
  chunk = std::max<std::int64_t>(1, chunk);
  const std::int64_t chunks = (end - begin + chunk - 1) / chunk;
  std::vector<T> partial(static_cast<std::size_t>(chunks), identity);
  parallel_for(0, chunks, workers, [&](std::int64_t c) {
    const std::int64_t lo = begin + c * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    partial[static_cast<std::size_t>(c)] = chunk_fn(lo, hi);
  });
  for (std::size_t width = 1; width < partial.size(); width *= 2) {
    for (std::size_t i = 0; i + width < partial.size(); i += 2 * width)
      partial[i] = combine(partial[i], partial[i + width]);
  }
  return partial.front();
}

}  // namespace modratio
