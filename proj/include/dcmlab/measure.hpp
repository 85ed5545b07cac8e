#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dcmlab/errors.hpp"

namespace dcmlab {

/// Multiset of nonnegative reals with tail queries, stored sorted ascending.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw EmptyMeasure("empirical measure must be nonempty");
        for (double v : values_) {
            if (v < 0.0) throw Error("empirical measure values must be nonnegative");
        }
        std::sort(values_.begin(), values_.end());
    }

    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

    /// Number of values strictly greater than t.
    std::int64_t count_above(double t) const {
        auto it = std::upper_bound(values_.begin(), values_.end(), t);
        return values_.end() - it;
    }

    /// mu_n(t, inf): fraction of values strictly greater than t.
    double tail(double t) const {
        return static_cast<double>(count_above(t)) / static_cast<double>(size());
    }

    double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(size());
    }

    double max() const { return values_.back(); }

    const std::vector<double>& sorted() const { return values_; }

private:
    std::vector<double> values_;
};

/// Exact 1-Wasserstein distance between two discrete measures on the line.
/// Equal sizes reduce to the sorted coupling; the general case integrates
/// the CDF difference.
double w1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

}  // namespace dcmlab
