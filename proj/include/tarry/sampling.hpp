#pragma once

// Seeded randomness and deterministic batch parallelism.
//
// Every sampling loop is split into fixed-size batches. Batch b draws from its
// own engine seeded by a sub-seed derived from (seed, b), and batch results are
// combined in a fixed order. Outputs therefore depend on (seed, count) only,
// never on how many threads ran the batches.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace tarry {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Sub-seed of batch `index` in stream `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) { return lo + eng_() % (hi - lo + 1); }
    bool coin() { return (eng_() >> 63) != 0; }
    std::uint64_t bits() { return eng_(); }

   private:
    std::mt19937_64 eng_;
};

/// Advisory worker count from TARRY_THREADS (default: hardware concurrency).
unsigned thread_count();

/// Runs fn(b) for b in [0, batches) on up to thread_count() workers.
void for_each_batch(std::size_t batches, const std::function<void(std::size_t)>& fn);

/// Fixed-shape pairwise summation tree.
double pairwise_sum(std::span<const double> xs) noexcept;

inline constexpr std::size_t kBatchSize = 256;

inline std::size_t batch_count(std::size_t n) { return (n + kBatchSize - 1) / kBatchSize; }

}  // namespace tarry
