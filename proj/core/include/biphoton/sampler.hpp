#pragma once

#include <cstdint>

#include "biphoton/correlate.hpp"

namespace biphoton {

struct RngSeed {
    std::uint64_t value = 0;
};

/// SplitMix64: 64 bits of state advanced by the golden-gamma increment and
/// mixed through a bijective finalizer. Chosen for exact cross-platform
/// reproducibility; all arithmetic is unsigned 64-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Substream seed: base XOR stream * kStreamMultiplier. Distinct stream
/// indices give distinct seeds because the multiplier is odd.
inline constexpr std::uint64_t kStreamMultiplier = 0x9E3779B97F4A7C15ULL;

RngSeed derive_stream_seed(RngSeed base, std::uint64_t stream);

/// One full finalizer pass over the seed value; bijective, so distinct seeds
/// stay distinct. Used to decouple nested substream derivations.
RngSeed mix_seed(RngSeed seed);

struct TrialCounts {
    std::uint64_t n11 = 0;
    std::uint64_t n22 = 0;
    std::uint64_t n12 = 0;
    std::uint64_t n21 = 0;

    std::uint64_t total() const { return n11 + n22 + n12 + n21; }
};

TrialCounts merge(const TrialCounts& a, const TrialCounts& b);

struct EstimateWithError {
    double c_hat;
    double std_err;
    std::uint64_t n;
};

/// Trials are consumed in fixed-size blocks, block j drawn from substream j
/// of the seed, so a partition along block boundaries merges back to the
/// sequential result no matter how blocks are assigned to workers.
inline constexpr std::uint64_t kSamplerBlockTrials = 4096;

/// n categorical draws from jd by inverse CDF in the fixed outcome order
/// (11, 22, 12, 21), one uniform double per trial. Identical (jd, n, seed)
/// produce identical counts on every platform.
TrialCounts sample_outcomes(const JointDistribution& jd, std::uint64_t n, RngSeed seed);

/// c_hat = (n11 + n22 - n12 - n21) / n with plug-in standard error
/// sqrt((1 - c_hat^2) / n). Throws InputError on an empty sample.
EstimateWithError estimate_correlation(const TrialCounts& tc);

} // namespace biphoton
