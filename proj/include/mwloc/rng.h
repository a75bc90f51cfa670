#pragma once

#include <cstdint>
#include <limits>

#include "mwloc/core.h"

namespace mwloc {

/// Identifies one independent random stream: a run-wide seed plus the index of
/// the sample or disorder realization consuming it.
struct RngHandle {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

/// SplitMix64 in counter mode.
///
/// Draw k of a stream is mix(key + (k + 1) * kGamma), where mix is the
/// SplitMix64 finalizer (Stafford "Mix13": shifts 30/27/31, multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) and kGamma = 0x9E3779B97F4A7C15.
/// The stream key is mix(mix(master_seed) + stream_index * kStreamStride + 1).
/// All derived variates (uniform doubles, bounded integers, normals) are
/// computed here rather than through <random> distributions, whose output is
/// implementation-defined, so draws are identical across platforms.
class CounterRng {
   public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kStreamStride = 0xD1B54A32D192ED03ULL;

    explicit CounterRng(RngHandle handle);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, bound), unbiased.
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal (Box-Muller).
    double normal();
    /// Complex normal with E|z|^2 = 1.
    cplx complex_normal();

    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z);

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0;
};

}  // namespace mwloc
