#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "dcmlab/graph.hpp"
#include "dcmlab/measure.hpp"
#include "dcmlab/walk.hpp"

namespace dcmlab {

struct WeightedExpansion {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;       // (tail, head), reveal order
    std::vector<std::pair<std::int64_t, std::int64_t>> tree_edges;  // first arrivals
    std::vector<std::int32_t> vertices;                             // root first
    std::vector<double> vertex_weight;   // tree-path weight per vertex (parallel)
    std::int64_t kappa = 0;              // number of matched pairs, <= 2/w_min
};

/// Reveals the subgraph spanned by paths from root with walk-weight >= w_min
/// (and length <= max_depth when given), expanding unmatched tails in
/// descending cumulative-weight order; ties break on the lowest half-edge
/// index.
WeightedExpansion weighted_expand(const Digraph& g, std::int32_t root, double w_min,
                                  std::optional<int> max_depth = std::nullopt,
                                  std::int64_t edge_budget = std::int64_t{1} << 40);

/// Co-generating variant: pairs each chosen tail with a uniform unmatched
/// head, extending the given partial matching in place.
WeightedExpansion weighted_expand_cogen(const BiDegreeSequence& seq, PartialMatching& env,
                                        Rng& rng, std::int32_t root, double w_min,
                                        std::optional<int> max_depth = std::nullopt,
                                        std::int64_t edge_budget = std::int64_t{1} << 40);

struct Skeleton {
    double a = 0.0;
    std::vector<std::tuple<std::int32_t, std::int64_t, std::int64_t>> matched_pairs;  // root, tail, head
    std::vector<std::int32_t> touched_vertices;  // V(xi_a), sorted
    std::vector<std::int32_t> roots;             // V(a), sorted
    std::int64_t edge_count = 0;                 // distinct matched tails
};

/// Union over roots z with d_z^- > n^a of weighted expansions with
/// w_min = n^a / d_z^-.
Skeleton build_skeleton(const Digraph& g, double a,
                        std::optional<double> deg_threshold = std::nullopt);

struct ExtremeReport {
    double pi_max = 0.0;
    std::int32_t argmax = 0;
    std::int64_t delta_minus = 0;
    std::int32_t delta_argmax = 0;
    double ratio_lower = 0.0;  // pi_max / (Delta^-/m)
    double ratio_upper = 0.0;  // pi_max / (log n Delta^-/m)
    bool argmax_coincide = false;
    bool lower_flag = false;   // (1-eps) Delta^-/m <= pi_max at eps = 0.1
    bool upper_flag = false;   // pi_max <= 30 log(n) Delta^-/m
    bool argmax_tie = false;
    bool delta_tie = false;
};

ExtremeReport extreme_report(const Digraph& g, const DistVector& pi);

/// Multiset {n pi(v)}.
EmpiricalMeasure psi_measure(const DistVector& pi);

struct TailCompareRow {
    double a = 0.0;
    double tail_phi = 0.0;
    double tail_psi = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass_phi = false;
    bool pass_psi = false;
};

struct TailCompareTable {
    std::vector<TailCompareRow> rows;
    bool cutoff_phi = false;
    bool cutoff_psi = false;
    bool phi_power_law = false;
    bool psi_power_law = false;
};

/// Side-by-side power-law band verdicts for the in-degree measure and a
/// stationary/PageRank score measure.
TailCompareTable tail_compare(const EmpiricalMeasure& phi, const EmpiricalMeasure& psi,
                              double kappa, double eps, std::span<const double> grid);

struct SkeletonRankReport {
    std::int64_t checked = 0;
    std::int64_t passed = 0;
    double fraction = 1.0;  // vacuously 1 for an empty skeleton
};

/// Fraction of v in V(xi_a) with n pi(v) >= n^a / (2 m/n).
SkeletonRankReport skeleton_rank_link(const Digraph& g, const DistVector& pi,
                                      const Skeleton& skeleton);

}  // namespace dcmlab
