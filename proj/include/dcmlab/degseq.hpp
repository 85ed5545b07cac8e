#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dcmlab/errors.hpp"
#include "dcmlab/measure.hpp"

namespace dcmlab {

using Eigen::Index;

/// Per-vertex (in-degree, out-degree) pairs with equal totals m.
struct BiDegreeSequence {
    Eigen::ArrayXi in_deg;
    Eigen::ArrayXi out_deg;
    std::int64_t m = 0;  // cached; equals in_deg.sum() == out_deg.sum()

    Index n() const { return in_deg.size(); }
    int max_in_degree() const { return in_deg.maxCoeff(); }    // Delta^-
    int max_out_degree() const { return out_deg.maxCoeff(); }  // Delta^+
    int min_out_degree() const { return out_deg.minCoeff(); }
};

/// Validates the balance invariant and caches m.
BiDegreeSequence make_sequence(Eigen::ArrayXi in_deg, Eigen::ArrayXi out_deg);
BiDegreeSequence make_sequence(const std::vector<std::pair<int, int>>& pairs);

BiDegreeSequence regular_sequence(Index n, int d);

struct AssumptionParams {
    double eta = 1.0;  // moment exponent margin, > 0
    double C = 10.0;   // moment bound constant, > 0
    int K = 2;         // out-degree cap, >= 2
};

struct ValidationReport {
    bool min_out_ok = false;  // min out-degree >= 2
    bool out_cap_ok = false;  // Delta^+ <= K
    bool moment_ok = false;   // sum (d^-)^{2+eta} <= C n
    double moment_sum = 0.0;
    int delta_minus = 0;
    int delta_plus = 0;
    bool pass() const { return min_out_ok && out_cap_ok && moment_ok; }
};

ValidationReport validate(const BiDegreeSequence& seq, const AssumptionParams& params);

struct EntropicSummary {
    double entropy = 0.0;  // H, nats per step
    double t_ent = 0.0;    // log(n)/H
    int h_eps = 0;         // floor(eps log n / (20 log Delta^+))
    double eps = 0.0;
};

EntropicSummary entropic(const BiDegreeSequence& seq, double eps = 0.2);

struct TailCheck {
    double a = 0.0;
    double tail = 0.0;  // measured mu_n(n^a, inf) or size-biased tail sum
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
};

enum class TailKind { power_law, kappa_light, extremal, none };

struct TailClassification {
    TailKind kind = TailKind::none;
    double kappa = 0.0;
    std::vector<TailCheck> witness_grid;
    bool cutoff_ok = false;        // mu_n(n^{1/kappa+eps}, inf) == 0
    double cutoff_threshold = 0.0;
};

/// Power-law band check at finite n: for every grid exponent a,
/// n^{-a kappa - eps} <= mu_n(n^a, inf) <= n^{-a kappa + eps}, and no mass
/// above n^{1/kappa + eps}. A lower band demanding less than one atom
/// (n^{-a kappa - eps} < 1/n) is vacuous at this n.
TailClassification classify_tail(const EmpiricalMeasure& measure, double kappa, double eps,
                                 std::span<const double> grid);

struct KappaLightResult {
    bool light = false;
    std::vector<TailCheck> witnesses;
};

/// Size-biased in-degree tail check: sum_{k > n^a} k phi(k) <= n^{-a(kappa-1)+eps}.
KappaLightResult is_kappa_light(const BiDegreeSequence& seq, double kappa, double eps,
                                std::span<const double> grid);

/// True iff a unique vertex attains Delta^- and every other in-degree is at
/// most margin * Delta^- / log n.
bool is_extremal(const BiDegreeSequence& seq, double margin = 0.1);

/// Constant out-degree d_out; in-degrees i.i.d. from the density
/// f(t) ~ min{1, t^{-1-kappa}} (inverse CDF, floored), unit-repaired so that
/// the totals balance.
BiDegreeSequence gen_powerlaw_seq(Index n, double kappa, int d_out, std::uint64_t seed);

/// Random Eulerian sequence: d_v^+ = d_v^- uniform in [d_min, d_max].
BiDegreeSequence gen_eulerian_seq(Index n, int d_min, int d_max, std::uint64_t seed);

/// One hub with in-degree ~ n^hub_exponent, all other in-degrees <= 3,
/// constant out-degree d_out.
BiDegreeSequence gen_extremal_seq(Index n, double hub_exponent, int d_out, std::uint64_t seed);

/// Multiset of in-degrees as an empirical measure (tails of phi).
EmpiricalMeasure in_degree_measure(const BiDegreeSequence& seq);

}  // namespace dcmlab
