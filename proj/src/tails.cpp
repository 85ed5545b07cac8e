#include "dcmlab/tails.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dcmlab/degseq.hpp"

namespace dcmlab {

namespace {

struct HeapEntry {
    double w;
    std::int64_t tail;
    std::int32_t owner;
    int owner_depth;
};

struct HeapOrder {
    // max-heap on weight, lowest half-edge index wins ties
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.w != b.w) return a.w < b.w;
        return a.tail > b.tail;
    }
};

// Core of the weighted out-neighborhood construction; resolve(tail) reveals
// the head matched to a tail.
template <class Resolve>
WeightedExpansion expand_impl(const BiDegreeSequence& seq,
                              const std::vector<std::int64_t>& tail_offset,
                              const std::vector<std::int32_t>& head_owner, Resolve&& resolve,
                              std::int32_t root, double w_min, std::optional<int> max_depth,
                              std::int64_t edge_budget) {
    if (!(w_min > 0.0) || w_min > 1.0) {
        throw std::invalid_argument("w_min must lie in (0, 1]");
    }
    WeightedExpansion result;
    result.vertices.push_back(root);
    result.vertex_weight.push_back(1.0);

    std::unordered_map<std::int32_t, std::pair<double, int>> tree;  // vertex -> (weight, depth)
    tree.emplace(root, std::make_pair(1.0, 0));

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
    auto push_tails = [&](std::int32_t v, double path_w, int depth) {
        if (max_depth && depth > *max_depth - 1) return;
        const double w = path_w / static_cast<double>(seq.out_deg[v]);
        if (w < w_min) return;
        for (std::int64_t t = tail_offset[static_cast<std::size_t>(v)];
             t < tail_offset[static_cast<std::size_t>(v) + 1]; ++t) {
            heap.push(HeapEntry{w, t, v, depth});
        }
    };
    push_tails(root, 1.0, 0);

    while (!heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        const std::int64_t head = resolve(top.tail);
        result.edges.emplace_back(top.tail, head);
        ++result.kappa;
        if (result.kappa > edge_budget) {
            throw BudgetExceeded("weighted expansion exceeded edge budget");
        }
        const std::int32_t hv = head_owner[static_cast<std::size_t>(head)];
        if (!tree.contains(hv)) {
            tree.emplace(hv, std::make_pair(top.w, top.owner_depth + 1));
            result.tree_edges.emplace_back(top.tail, head);
            result.vertices.push_back(hv);
            result.vertex_weight.push_back(top.w);
            push_tails(hv, top.w, top.owner_depth + 1);
        }
    }
    if (static_cast<double>(result.kappa) > 2.0 / w_min) {
        throw Error("weighted expansion violated the 2/w_min edge bound");
    }
    return result;
}

}  // namespace

WeightedExpansion weighted_expand(const Digraph& g, std::int32_t root, double w_min,
                                  std::optional<int> max_depth, std::int64_t edge_budget) {
    return expand_impl(
        g.seq, g.tail_offset, g.head_owner,
        [&](std::int64_t tail) { return g.matching[static_cast<std::size_t>(tail)]; }, root,
        w_min, max_depth, edge_budget);
}

WeightedExpansion weighted_expand_cogen(const BiDegreeSequence& seq, PartialMatching& env,
                                        Rng& rng, std::int32_t root, double w_min,
                                        std::optional<int> max_depth,
                                        std::int64_t edge_budget) {
    const Index n = seq.n();
    const std::int64_t m = seq.m;
    std::vector<std::int64_t> tail_offset(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> head_offset(static_cast<std::size_t>(n) + 1, 0);
    for (Index v = 0; v < n; ++v) {
        tail_offset[static_cast<std::size_t>(v) + 1] =
            tail_offset[static_cast<std::size_t>(v)] + seq.out_deg[v];
        head_offset[static_cast<std::size_t>(v) + 1] =
            head_offset[static_cast<std::size_t>(v)] + seq.in_deg[v];
    }
    std::vector<std::int32_t> head_owner(static_cast<std::size_t>(m));
    for (Index v = 0; v < n; ++v) {
        for (auto h = head_offset[static_cast<std::size_t>(v)];
             h < head_offset[static_cast<std::size_t>(v) + 1]; ++h) {
            head_owner[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(v);
        }
    }
    if (env.tail_to_head.empty()) {
        env.tail_to_head.assign(static_cast<std::size_t>(m), -1);
        env.head_to_tail.assign(static_cast<std::size_t>(m), -1);
    }
    auto resolve = [&](std::int64_t tail) {
        if (env.tail_to_head[static_cast<std::size_t>(tail)] != -1) {
            return env.tail_to_head[static_cast<std::size_t>(tail)];
        }
        std::int64_t head;
        do {
            head = uniform_below(rng, m);
        } while (env.head_to_tail[static_cast<std::size_t>(head)] != -1);
        env.tail_to_head[static_cast<std::size_t>(tail)] = head;
        env.head_to_tail[static_cast<std::size_t>(head)] = tail;
        ++env.matched;
        return head;
    };
    return expand_impl(seq, tail_offset, head_owner, resolve, root, w_min, max_depth,
                       edge_budget);
}

Skeleton build_skeleton(const Digraph& g, double a, std::optional<double> deg_threshold) {
    if (a <= 0.0 || a >= 1.0) throw std::invalid_argument("a must lie in (0, 1)");
    const double n = static_cast<double>(g.n());
    const double na = std::pow(n, a);
    const double threshold = deg_threshold.value_or(na);

    Skeleton skeleton;
    skeleton.a = a;
    for (Index z = 0; z < g.n(); ++z) {
        if (static_cast<double>(g.seq.in_deg[z]) > threshold) {
            skeleton.roots.push_back(static_cast<std::int32_t>(z));
        }
    }
    std::unordered_set<std::int64_t> seen_tails;
    for (std::int32_t z : skeleton.roots) {
        const double w_min = na / static_cast<double>(g.seq.in_deg[z]);
        const WeightedExpansion expansion = weighted_expand(g, z, w_min);
        for (const auto& [tail, head] : expansion.edges) {
            skeleton.matched_pairs.emplace_back(z, tail, head);
            seen_tails.insert(tail);
        }
    }
    std::sort(skeleton.matched_pairs.begin(), skeleton.matched_pairs.end(),
              [](const auto& x, const auto& y) { return std::get<1>(x) < std::get<1>(y); });
    skeleton.edge_count = static_cast<std::int64_t>(seen_tails.size());

    std::unordered_set<std::int32_t> touched(skeleton.roots.begin(), skeleton.roots.end());
    for (std::int64_t tail : seen_tails) {
        touched.insert(g.tail_owner[static_cast<std::size_t>(tail)]);
        touched.insert(
            g.head_owner[static_cast<std::size_t>(g.matching[static_cast<std::size_t>(tail)])]);
    }
    skeleton.touched_vertices.assign(touched.begin(), touched.end());
    std::sort(skeleton.touched_vertices.begin(), skeleton.touched_vertices.end());
    return skeleton;
}

ExtremeReport extreme_report(const Digraph& g, const DistVector& pi) {
    ExtremeReport report;
    const Index n = g.n();
    report.pi_max = pi.vec().maxCoeff();
    for (Index v = 0; v < n; ++v) {
        if (pi(v) == report.pi_max) {
            report.argmax = static_cast<std::int32_t>(v);
            break;
        }
    }
    report.argmax_tie =
        (pi.vec().array() == report.pi_max).count() > 1;
    report.delta_minus = g.seq.max_in_degree();
    for (Index v = 0; v < n; ++v) {
        if (g.seq.in_deg[v] == report.delta_minus) {
            report.delta_argmax = static_cast<std::int32_t>(v);
            break;
        }
    }
    report.delta_tie = (g.seq.in_deg == static_cast<int>(report.delta_minus)).count() > 1;
    const double scale = static_cast<double>(report.delta_minus) / static_cast<double>(g.m());
    report.ratio_lower = report.pi_max / scale;
    const double logn = std::log(static_cast<double>(n));
    report.ratio_upper = report.pi_max / (logn * scale);
    report.argmax_coincide = report.argmax == report.delta_argmax;
    report.lower_flag = 0.9 * scale <= report.pi_max;
    report.upper_flag = report.pi_max <= 30.0 * logn * scale;
    return report;
}

EmpiricalMeasure psi_measure(const DistVector& pi) {
    const Index n = pi.size();
    // A constant distribution is exactly uniform, so n pi(v) is exactly 1.
    if (pi.vec().minCoeff() == pi.vec().maxCoeff()) {
        return EmpiricalMeasure(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    for (Index v = 0; v < n; ++v) {
        values[static_cast<std::size_t>(v)] = static_cast<double>(n) * pi(v);
    }
    return EmpiricalMeasure(std::move(values));
}

TailCompareTable tail_compare(const EmpiricalMeasure& phi, const EmpiricalMeasure& psi,
                              double kappa, double eps, std::span<const double> grid) {
    const TailClassification phi_cls = classify_tail(phi, kappa, eps, grid);
    const TailClassification psi_cls = classify_tail(psi, kappa, eps, grid);
    TailCompareTable table;
    for (std::size_t i = 0; i < phi_cls.witness_grid.size(); ++i) {
        const auto& p = phi_cls.witness_grid[i];
        const auto& q = psi_cls.witness_grid[i];
        table.rows.push_back(TailCompareRow{p.a, p.tail, q.tail, p.lo, p.hi, p.pass, q.pass});
    }
    table.cutoff_phi = phi_cls.cutoff_ok;
    table.cutoff_psi = psi_cls.cutoff_ok;
    table.phi_power_law = phi_cls.kind == TailKind::power_law;
    table.psi_power_law = psi_cls.kind == TailKind::power_law;
    return table;
}

SkeletonRankReport skeleton_rank_link(const Digraph& g, const DistVector& pi,
                                      const Skeleton& skeleton) {
    SkeletonRankReport report;
    const double n = static_cast<double>(g.n());
    const double avg_deg = static_cast<double>(g.m()) / n;
    const double threshold = std::pow(n, skeleton.a) / (2.0 * avg_deg);
    for (std::int32_t v : skeleton.touched_vertices) {
        ++report.checked;
        if (n * pi(v) >= threshold) ++report.passed;
    }
    report.fraction = report.checked == 0
                          ? 1.0
                          : static_cast<double>(report.passed) /
                                static_cast<double>(report.checked);
    return report;
}

}  // namespace dcmlab
