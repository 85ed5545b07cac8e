#include "dcmlab/degseq.hpp"

#include <cmath>
#include <stdexcept>

#include "dcmlab/rng.hpp"

namespace dcmlab {

BiDegreeSequence make_sequence(Eigen::ArrayXi in_deg, Eigen::ArrayXi out_deg) {
    if (in_deg.size() != out_deg.size() || in_deg.size() < 1) {
        throw MalformedSequence("degree arrays must be nonempty and of equal length");
    }
    if ((in_deg < 0).any() || (out_deg < 0).any()) {
        throw MalformedSequence("degrees must be nonnegative");
    }
    const std::int64_t min = in_deg.cast<std::int64_t>().sum();
    const std::int64_t mout = out_deg.cast<std::int64_t>().sum();
    if (min != mout) {
        throw MalformedSequence("in-degree total " + std::to_string(min) +
                                " != out-degree total " + std::to_string(mout));
    }
    return BiDegreeSequence{std::move(in_deg), std::move(out_deg), min};
}

BiDegreeSequence make_sequence(const std::vector<std::pair<int, int>>& pairs) {
    Eigen::ArrayXi in_deg(static_cast<Index>(pairs.size()));
    Eigen::ArrayXi out_deg(static_cast<Index>(pairs.size()));
    for (Index i = 0; i < in_deg.size(); ++i) {
        in_deg[i] = pairs[static_cast<std::size_t>(i)].first;
        out_deg[i] = pairs[static_cast<std::size_t>(i)].second;
    }
    return make_sequence(std::move(in_deg), std::move(out_deg));
}

BiDegreeSequence regular_sequence(Index n, int d) {
    return make_sequence(Eigen::ArrayXi::Constant(n, d), Eigen::ArrayXi::Constant(n, d));
}

ValidationReport validate(const BiDegreeSequence& seq, const AssumptionParams& params) {
    if (seq.in_deg.cast<std::int64_t>().sum() != seq.out_deg.cast<std::int64_t>().sum()) {
        throw MalformedSequence("in/out degree totals differ");
    }
    ValidationReport report;
    report.delta_minus = seq.max_in_degree();
    report.delta_plus = seq.max_out_degree();
    report.min_out_ok = seq.min_out_degree() >= 2;
    report.out_cap_ok = report.delta_plus <= params.K;
    double moment = 0.0;
    for (Index v = 0; v < seq.n(); ++v) {
        moment += std::pow(static_cast<double>(seq.in_deg[v]), 2.0 + params.eta);
    }
    report.moment_sum = moment;
    report.moment_ok = moment <= params.C * static_cast<double>(seq.n());
    return report;
}

EntropicSummary entropic(const BiDegreeSequence& seq, double eps) {
    if (seq.m <= 0) throw DegenerateEntropy("sequence has no edges");
    if (seq.min_out_degree() < 2) {
        throw DegenerateEntropy("entropic time requires all out-degrees >= 2");
    }
    EntropicSummary summary;
    summary.eps = eps;
    const double m = static_cast<double>(seq.m);
    double h = 0.0;
    for (Index v = 0; v < seq.n(); ++v) {
        if (seq.in_deg[v] > 0) {
            h += (seq.in_deg[v] / m) * std::log(static_cast<double>(seq.out_deg[v]));
        }
    }
    summary.entropy = h;
    const double logn = std::log(static_cast<double>(seq.n()));
    summary.t_ent = logn / h;
    const double log_dplus = std::log(static_cast<double>(seq.max_out_degree()));
    summary.h_eps = static_cast<int>(std::floor(eps * logn / (20.0 * log_dplus)));
    return summary;
}

TailClassification classify_tail(const EmpiricalMeasure& measure, double kappa, double eps,
                                 std::span<const double> grid) {
    if (kappa <= 0.0 || eps <= 0.0) throw std::invalid_argument("kappa and eps must be positive");
    for (double a : grid) {
        if (a <= 0.0 || a >= 1.0 / kappa) {
            throw std::invalid_argument("grid exponents must lie in (0, 1/kappa)");
        }
    }
    TailClassification cls;
    cls.kappa = kappa;
    const double n = static_cast<double>(measure.size());
    bool all_pass = true;
    for (double a : grid) {
        TailCheck check;
        check.a = a;
        check.tail = measure.tail(std::pow(n, a));
        check.lo = std::pow(n, -a * kappa - eps);
        check.hi = std::pow(n, -a * kappa + eps);
        // a lower band demanding less than one atom is below the measure's
        // 1/n resolution and carries no testable content at this n
        const bool lower_ok = check.lo < 1.0 / n || check.tail >= check.lo;
        check.pass = lower_ok && check.tail <= check.hi;
        all_pass = all_pass && check.pass;
        cls.witness_grid.push_back(check);
    }
    cls.cutoff_threshold = std::pow(n, 1.0 / kappa + eps);
    cls.cutoff_ok = measure.count_above(cls.cutoff_threshold) == 0;
    cls.kind = (all_pass && cls.cutoff_ok) ? TailKind::power_law : TailKind::none;
    return cls;
}

KappaLightResult is_kappa_light(const BiDegreeSequence& seq, double kappa, double eps,
                                std::span<const double> grid) {
    if (kappa <= 0.0 || eps <= 0.0) throw std::invalid_argument("kappa and eps must be positive");
    KappaLightResult result;
    result.light = true;
    const double n = static_cast<double>(seq.n());
    for (double a : grid) {
        if (a <= 0.0) throw std::invalid_argument("grid exponents must be positive");
        const double cut = std::pow(n, a);
        // sum_{k > n^a} k phi(k) = (1/n) sum over vertices with d^- > n^a of d^-
        double tail_sum = 0.0;
        for (Index v = 0; v < seq.n(); ++v) {
            if (static_cast<double>(seq.in_deg[v]) > cut) {
                tail_sum += static_cast<double>(seq.in_deg[v]);
            }
        }
        tail_sum /= n;
        TailCheck check;
        check.a = a;
        check.tail = tail_sum;
        check.lo = 0.0;
        check.hi = std::pow(n, -a * (kappa - 1.0) + eps);
        check.pass = tail_sum <= check.hi;
        result.light = result.light && check.pass;
        result.witnesses.push_back(check);
    }
    return result;
}

bool is_extremal(const BiDegreeSequence& seq, double margin) {
    if (margin <= 0.0) throw std::invalid_argument("margin must be positive");
    if (seq.n() < 2) return false;
    const int delta = seq.max_in_degree();
    Index argmax = -1;
    int second = -1;
    for (Index v = 0; v < seq.n(); ++v) {
        if (seq.in_deg[v] == delta) {
            if (argmax >= 0) return false;  // tie at the maximum
            argmax = v;
        } else if (seq.in_deg[v] > second) {
            second = seq.in_deg[v];
        }
    }
    const double bound = margin * static_cast<double>(delta) /
                         std::log(static_cast<double>(seq.n()));
    return static_cast<double>(second) <= bound;
}

namespace {

// Inverse CDF of f(t) = c min{1, t^{-1-kappa}} on [0, inf), c = kappa/(kappa+1).
double powerlaw_quantile(double u, double kappa) {
    const double c = kappa / (kappa + 1.0);
    if (u < c) return u / c;
    return std::pow(1.0 - kappa * (u / c - 1.0), -1.0 / kappa);
}

}  // namespace

BiDegreeSequence gen_powerlaw_seq(Index n, double kappa, int d_out, std::uint64_t seed) {
    if (n < 2 || kappa <= 2.0 || d_out < 2) {
        throw std::invalid_argument("gen_powerlaw_seq requires n >= 2, kappa > 2, d_out >= 2");
    }
    Rng rng(seed);
    const std::int64_t target = static_cast<std::int64_t>(n) * d_out;
    Eigen::ArrayXi in_deg(n);
    std::int64_t total = 0;
    for (Index v = 0; v < n; ++v) {
        const double t = powerlaw_quantile(uniform01(rng), kappa);
        const double capped = std::min(t, static_cast<double>(target));
        in_deg[v] = static_cast<int>(std::floor(capped));
        total += in_deg[v];
    }
    // Unit repairs on uniformly chosen vertices until the totals balance.
    while (total < target) {
        const Index v = uniform_below(rng, n);
        in_deg[v] += 1;
        ++total;
    }
    while (total > target) {
        if ((in_deg > 0).count() == 0) {
            throw RepairOverflow("cannot balance: no positive in-degrees left");
        }
        const Index v = uniform_below(rng, n);
        if (in_deg[v] >= 1) {
            in_deg[v] -= 1;
            --total;
        }
    }
    return make_sequence(std::move(in_deg), Eigen::ArrayXi::Constant(n, d_out));
}

BiDegreeSequence gen_eulerian_seq(Index n, int d_min, int d_max, std::uint64_t seed) {
    if (n < 1 || d_min < 2 || d_max < d_min) {
        throw std::invalid_argument("gen_eulerian_seq requires n >= 1, 2 <= d_min <= d_max");
    }
    Rng rng(seed);
    Eigen::ArrayXi deg(n);
    for (Index v = 0; v < n; ++v) {
        deg[v] = d_min + static_cast<int>(uniform_below(rng, d_max - d_min + 1));
    }
    return make_sequence(deg, deg);
}

BiDegreeSequence gen_extremal_seq(Index n, double hub_exponent, int d_out, std::uint64_t seed) {
    if (n < 4 || hub_exponent <= 0.0 || hub_exponent >= 1.0 || d_out < 2) {
        throw std::invalid_argument("gen_extremal_seq parameter out of range");
    }
    Rng rng(seed);
    const int hub = std::max(
        d_out + 1, static_cast<int>(std::floor(std::pow(static_cast<double>(n), hub_exponent))));
    Eigen::ArrayXi in_deg = Eigen::ArrayXi::Constant(n, d_out);
    const Index hub_vertex = uniform_below(rng, n);
    in_deg[hub_vertex] = hub;
    std::int64_t total = static_cast<std::int64_t>(n - 1) * d_out + hub;
    const std::int64_t target = static_cast<std::int64_t>(n) * d_out;
    while (total > target) {
        const Index v = uniform_below(rng, n);
        if (v != hub_vertex && in_deg[v] >= 1) {
            in_deg[v] -= 1;
            --total;
        }
    }
    while (total < target) {
        const Index v = uniform_below(rng, n);
        if (v != hub_vertex && in_deg[v] < 3) {
            in_deg[v] += 1;
            ++total;
        }
    }
    return make_sequence(std::move(in_deg), Eigen::ArrayXi::Constant(n, d_out));
}

EmpiricalMeasure in_degree_measure(const BiDegreeSequence& seq) {
    std::vector<double> values(static_cast<std::size_t>(seq.n()));
    for (Index v = 0; v < seq.n(); ++v) {
        values[static_cast<std::size_t>(v)] = static_cast<double>(seq.in_deg[v]);
    }
    return EmpiricalMeasure(std::move(values));
}

}  // namespace dcmlab
