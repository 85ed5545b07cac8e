#include "dcmlab/measure.hpp"

#include <cmath>
#include <cstdlib>

namespace dcmlab {

double w1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
    const auto& a = mu.sorted();
    const auto& b = nu.sorted();
    if (a.size() == b.size()) {
        // Sorted coupling is optimal on the line.
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
        return s / static_cast<double>(a.size());
    }
    // integral of |F_mu - F_nu| over the merged breakpoints, exact for
    // piecewise-constant CDFs
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double total = 0.0;
    double prev = 0.0;
    bool have_prev = false;
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
            x = a[i];
        } else {
            x = b[j];
        }
        if (have_prev && x > prev) {
            const double diff = static_cast<double>(i) / na - static_cast<double>(j) / nb;
            total += std::abs(diff) * (x - prev);
        }
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        prev = x;
        have_prev = true;
    }
    return total;
}

}  // namespace dcmlab
