#include "biphoton/sampler.hpp"

#include <cmath>

namespace biphoton {

RngSeed derive_stream_seed(RngSeed base, std::uint64_t stream) {
    return {base.value ^ (stream * kStreamMultiplier)};
}

RngSeed mix_seed(RngSeed seed) {
    return {SplitMix64(seed.value).next_u64()};
}

TrialCounts merge(const TrialCounts& a, const TrialCounts& b) {
    return {a.n11 + b.n11, a.n22 + b.n22, a.n12 + b.n12, a.n21 + b.n21};
}

TrialCounts sample_outcomes(const JointDistribution& jd, std::uint64_t n, RngSeed seed) {
    if (n == 0) throw InputError("sample_outcomes: trial count must be positive");
    validate_distribution(jd);
    // Inverse CDF in the fixed outcome order (11, 22, 12, 21).
    const double c1 = jd.p11;
    const double c2 = c1 + jd.p22;
    const double c3 = c2 + jd.p12;

    TrialCounts counts;
    const std::uint64_t n_blocks = (n + kSamplerBlockTrials - 1) / kSamplerBlockTrials;
    for (std::uint64_t block = 0; block < n_blocks; ++block) {
        SplitMix64 rng(derive_stream_seed(seed, block).value);
        const std::uint64_t begin = block * kSamplerBlockTrials;
        const std::uint64_t end = begin + kSamplerBlockTrials < n ? begin + kSamplerBlockTrials : n;
        for (std::uint64_t t = begin; t < end; ++t) {
            const double u = rng.next_double();
            if (u < c1) {
                ++counts.n11;
            } else if (u < c2) {
                ++counts.n22;
            } else if (u < c3) {
                ++counts.n12;
            } else {
                ++counts.n21;
            }
        }
    }
    return counts;
}

EstimateWithError estimate_correlation(const TrialCounts& tc) {
    const std::uint64_t n = tc.total();
    if (n == 0) throw InputError("estimate_correlation: empty sample");
    const double nd = static_cast<double>(n);
    const double c_hat =
        (static_cast<double>(tc.n11) + static_cast<double>(tc.n22) -
         static_cast<double>(tc.n12) - static_cast<double>(tc.n21)) / nd;
    const double var = (1.0 - c_hat * c_hat) / nd;
    return {c_hat, std::sqrt(var > 0.0 ? var : 0.0), n};
}

} // namespace biphoton
