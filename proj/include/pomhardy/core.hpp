#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pomhardy {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AxiomViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by decreasing-set enumeration when the ideal count exceeds the cap.
/// Carries the number of ideals seen before aborting.
class IdealOverflow : public std::runtime_error {
 public:
  explicit IdealOverflow(long long partial)
      : std::runtime_error("decreasing-set enumeration exceeded cap after " +
                           std::to_string(partial) + " ideals"),
        partial_count(partial) {}
  long long partial_count;
};

/// Round-trip decimal formatting; used for every report/dump so that reruns
/// are byte-identical.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// splitmix64. Small, deterministic across platforms, good enough for the
/// samplers here.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  /// 10^U(-decades/2, decades/2).
  double log_uniform(double decades) {
    return std::pow(10.0, uniform(-decades / 2.0, decades / 2.0));
  }

  /// Derive an independent stream; used to hand deterministic seeds to
  /// parallel tasks.
  uint64_t fork(uint64_t salt) {
    Rng r(state ^ (0xA5A5A5A5A5A5A5A5ull + salt * 0x9E3779B97F4A7C15ull));
    return r.next();
  }
};

/// Runs fn(0..n-1) on up to `workers` threads. Callers store results into
/// pre-sized slots indexed by i and merge sequentially afterwards, so output
/// never depends on the worker count. fn must not throw.
template <class Fn>
void parallel_for(long long n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  int nthreads = static_cast<int>(std::min<long long>(workers, n));
  std::atomic<long long> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int w = 0; w < nthreads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        long long i = cursor.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace pomhardy
