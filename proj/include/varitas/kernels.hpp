#pragma once

// Data-parallel scan kernels.  Every exhaustive search in the library reduces
// to "find the least index in [0, count) whose check fails"; the serial
// variant is the reference implementation and the OpenMP variant must return
// the same index for any thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <utility>
#include <optional>
#include <vector>

#ifdef VARITAS_HAVE_OPENMP
#include <omp.h>
#endif

namespace varitas::kernels {

enum class Mode { automatic, serial, parallel };

/// Number of worker threads used by automatic-mode kernels (the --jobs flag).
int jobs() noexcept;
void set_jobs(int n) noexcept;

/// True when called from inside an active parallel region.
inline bool in_parallel() noexcept {
#ifdef VARITAS_HAVE_OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

/// ChunkScan is callable as scan(begin, end) -> std::optional<std::uint64_t>
/// and must return the least failing index in [begin, end), if any.
template <class ChunkScan>
std::optional<std::uint64_t> least_failure_serial(std::uint64_t count,
                                                  ChunkScan&& scan) {
  if (count == 0) return std::nullopt;
  return scan(std::uint64_t{0}, count);
}

template <class ChunkScan>
std::optional<std::uint64_t> least_failure_parallel(std::uint64_t count,
                                                    ChunkScan&& scan,
                                                    int threads) {
  if (count == 0) return std::nullopt;
#ifdef VARITAS_HAVE_OPENMP
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  threads = std::max(threads, 1);
  std::uint64_t const target_chunks = static_cast<std::uint64_t>(threads) * 16;
  std::uint64_t const chunk =
      std::max<std::uint64_t>(256, (count + target_chunks - 1) / target_chunks);
  std::int64_t const chunks = static_cast<std::int64_t>((count + chunk - 1) / chunk);
  std::atomic<std::uint64_t> best{none};

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::uint64_t const begin = static_cast<std::uint64_t>(c) * chunk;
    // chunks are independent; anything past the best failure is irrelevant
    if (begin >= best.load(std::memory_order_relaxed)) continue;
    std::uint64_t const end = std::min(count, begin + chunk);
    if (auto hit = scan(begin, end)) {
      std::uint64_t cur = best.load(std::memory_order_relaxed);
      while (*hit < cur &&
             !best.compare_exchange_weak(cur, *hit, std::memory_order_relaxed)) {
      }
    }
  }
  std::uint64_t const found = best.load();
  if (found == none) return std::nullopt;
  return found;
#else
  (void)threads;
  return least_failure_serial(count, std::forward<ChunkScan>(scan));
#endif
}

template <class ChunkScan>
std::optional<std::uint64_t> least_failure(std::uint64_t count, ChunkScan&& scan,
                                           Mode mode = Mode::automatic) {
  bool parallel = false;
  switch (mode) {
    case Mode::serial: parallel = false; break;
    case Mode::parallel: parallel = !in_parallel(); break;
    case Mode::automatic:
      parallel = jobs() > 1 && count >= 4096 && !in_parallel();
      break;
  }
  if (!parallel) return least_failure_serial(count, std::forward<ChunkScan>(scan));
  return least_failure_parallel(count, std::forward<ChunkScan>(scan),
                                std::max(jobs(), 2));
}

/// Runs body(i) for every i in [0, count).  Bodies must write to disjoint
/// state; the outcome is therefore independent of the schedule.
template <class Body>
void for_each_index(std::int64_t count, Body&& body, Mode mode = Mode::automatic) {
  bool const parallel = mode != Mode::serial && !in_parallel() &&
                        (mode == Mode::parallel || jobs() > 1);
#ifdef VARITAS_HAVE_OPENMP
  if (parallel) {
    int const threads = std::max(jobs(), 2);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

/// Mixed-radix odometer over domain^arity in lexicographic order, most
/// significant position first.
class Odometer {
 public:
  Odometer(std::uint32_t radix, std::uint32_t arity, std::uint64_t start)
      : radix_(radix), digits_(arity, 0) {
    for (std::uint32_t i = arity; i-- > 0;) {
      digits_[i] = static_cast<std::uint32_t>(start % radix_);
      start /= radix_;
    }
  }

  std::uint32_t operator[](std::size_t i) const { return digits_[i]; }
  std::size_t size() const { return digits_.size(); }
  std::vector<std::uint32_t> const& digits() const { return digits_; }

  /// Advances by one; returns the lowest position that changed.
  std::size_t next() {
    std::size_t i = digits_.size();
    while (i-- > 0) {
      if (++digits_[i] < radix_) return i;
      digits_[i] = 0;
    }
    return 0;
  }

 private:
  std::uint32_t radix_;
  std::vector<std::uint32_t> digits_;
};

}  // namespace varitas::kernels
