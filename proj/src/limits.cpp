#include "dcmlab/limits.hpp"

#include <cmath>

#include "dcmlab/rng.hpp"
#include "dcmlab/tails.hpp"

namespace dcmlab {

PopulationState sfpe_population(const BiDegreeSequence& seq, Index pool_size, int generations,
                                std::uint64_t seed) {
    if (seq.min_out_degree() < 2) {
        throw DegenerateEntropy("population dynamics requires all out-degrees >= 2");
    }
    if (pool_size < 1) throw std::invalid_argument("pool_size must be positive");
    std::vector<double> wout(static_cast<std::size_t>(seq.n()));
    for (Index v = 0; v < seq.n(); ++v) {
        wout[static_cast<std::size_t>(v)] = static_cast<double>(seq.out_deg[v]);
    }
    const DiscreteSampler mu_out(wout);

    PopulationState state;
    state.pool.assign(static_cast<std::size_t>(pool_size), 1.0);
    for (int gen = 1; gen <= generations; ++gen) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(gen)));
        std::vector<double> next(state.pool.size());
        for (auto& slot : next) {
            const Index j = static_cast<Index>(mu_out(rng));
            double s = 0.0;
            for (int k = 0; k < seq.in_deg[j]; ++k) {
                s += state.pool[static_cast<std::size_t>(uniform_below(rng, pool_size))];
            }
            slot = s / static_cast<double>(seq.out_deg[j]);
        }
        state.step_w1.push_back(
            w1(EmpiricalMeasure(state.pool), EmpiricalMeasure(next)));
        state.pool = std::move(next);
        state.generation = gen;
    }
    return state;
}

EmpiricalMeasure sample_Ln(const BiDegreeSequence& seq, const PopulationState& pop,
                           Index n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be positive");
    Rng rng(seed);
    const auto pool_size = static_cast<std::int64_t>(pop.pool.size());
    const double n = static_cast<double>(seq.n());
    const double m = static_cast<double>(seq.m);
    std::vector<double> values(static_cast<std::size_t>(n_samples));
    for (auto& x : values) {
        const Index v = uniform_below(rng, seq.n());
        double s = 0.0;
        for (int k = 0; k < seq.in_deg[v]; ++k) {
            s += pop.pool[static_cast<std::size_t>(uniform_below(rng, pool_size))];
        }
        x = (s * n) / m;
    }
    return EmpiricalMeasure(std::move(values));
}

double martingale_M(const MarkedTree& tree, const BiDegreeSequence& seq, int h) {
    if (h < 0) throw std::invalid_argument("h must be nonnegative");
    if (tree.depth < h) {
        throw DepthExceeded("tree of depth " + std::to_string(tree.depth) +
                            " cannot evaluate M at h = " + std::to_string(h));
    }
    // q(node) = prod over non-root path nodes of 1/d^+_{mark}; nodes are
    // stored with parents preceding children.
    std::vector<double> q(tree.nodes.size());
    double total = 0.0;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        q[i] = (node.parent < 0)
                   ? 1.0
                   : q[static_cast<std::size_t>(node.parent)] /
                         static_cast<double>(seq.out_deg[node.mark]);
        if (node.depth == h) {
            total += static_cast<double>(seq.in_deg[node.mark]) * q[i];
        }
    }
    return total;
}

BulkCompareResult bulk_compare(const Digraph& g, const DistVector& pi,
                               const BulkSettings& settings) {
    EmpiricalMeasure psi = psi_measure(pi);
    const PopulationState pop = sfpe_population(g.seq, settings.pool_size, settings.generations,
                                                derive_seed(settings.seed, 0x5350u));
    EmpiricalMeasure ln_hat =
        sample_Ln(g.seq, pop, settings.ln_samples, derive_seed(settings.seed, 0x4c4eu));
    const double dist = w1(psi, ln_hat);
    return BulkCompareResult{dist, std::move(psi), std::move(ln_hat)};
}

}  // namespace dcmlab
