#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dcmlab {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent substream seed from (base, tag).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(splitmix64(base) ^ splitmix64(tag));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1, std::uint64_t tag2) {
    return derive_seed(derive_seed(base, tag1), tag2);
}

/// Uniform in [0, 1).
inline double uniform01(Rng& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n).
inline std::int64_t uniform_below(Rng& rng, std::int64_t n) {
    const auto un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
}

/// Samples indices proportionally to fixed nonnegative weights
/// (cumulative sums + binary search; deterministic across platforms).
class DiscreteSampler {
public:
    DiscreteSampler() = default;

    explicit DiscreteSampler(std::span<const double> weights) {
        cum_.reserve(weights.size());
        double acc = 0.0;
        for (double w : weights) {
            acc += w;
            cum_.push_back(acc);
        }
        total_ = acc;
    }

    std::int64_t operator()(Rng& rng) const {
        const double u = uniform01(rng) * total_;
        auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
        if (it == cum_.end()) --it;
        return it - cum_.begin();
    }

    double total() const { return total_; }

private:
    std::vector<double> cum_;
    double total_ = 0.0;
};

}  // namespace dcmlab
