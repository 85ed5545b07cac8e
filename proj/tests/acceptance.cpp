// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Statistical criteria use fixed seeds and pre-registered bands;
// exact criteria compare against the independent oracles in test_util.hpp.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <utility>
#include <vector>

#include "dcmlab/experiment.hpp"
#include "dcmlab/graph.hpp"
#include "dcmlab/limits.hpp"
#include "dcmlab/tails.hpp"
#include "dcmlab/walk.hpp"
#include "test_util.hpp"

using namespace dcmlab;

namespace {

// Random small sequence with out-degrees in [2, 3] and all in-degrees positive.
BiDegreeSequence random_small_seq(Index n, Rng& rng) {
    for (;;) {
        Eigen::ArrayXi out(n);
        for (Index v = 0; v < n; ++v) out[v] = 2 + static_cast<int>(uniform_below(rng, 2));
        const std::int64_t m = out.cast<std::int64_t>().sum();
        Eigen::ArrayXi in = Eigen::ArrayXi::Zero(n);
        for (std::int64_t k = 0; k < m; ++k) ++in[uniform_below(rng, n)];
        if ((in > 0).all()) return make_sequence(in, out);
    }
}

// Dense linear-solve equivalence on small strongly connected aperiodic
// multigraphs.
bool dense_oracle_equivalence() {
    Rng rng(101);
    int tested = 0;
    for (std::uint64_t rep = 0; tested < 200 && rep < 20000; ++rep) {
        const Index n = 2 + static_cast<Index>(uniform_below(rng, 7));
        const BiDegreeSequence seq = random_small_seq(n, rng);
        const Digraph g = sample_dcm(seq, derive_seed(101, rep));
        if (!testutil::strongly_connected(g) || !testutil::aperiodic(g)) continue;
        ++tested;
        const Eigen::MatrixXd P = testutil::dense_P(g);

        Vec raw(n);
        for (Index i = 0; i < n; ++i) raw(i) = uniform01(rng) + 0.01;
        const DistVector mu(raw);
        const Vec pushed = apply_P(g, mu).vec();
        if ((pushed - P.transpose() * mu.vec()).cwiseAbs().maxCoeff() > 1e-12) return false;

        const Vec pi = stationary(g, 1e-13).pi.vec();
        if ((pi - testutil::dense_stationary(P)).cwiseAbs().maxCoeff() > 1e-8) return false;

        const DistVector lambda = DistVector::uniform(n);
        const double alpha = 0.15 + 0.7 * uniform01(rng);
        const Vec pr = pagerank(g, PageRankParams{alpha, lambda}, 1e-13).vec();
        if ((pr - testutil::dense_pagerank(P, alpha, lambda.vec())).cwiseAbs().maxCoeff() >
            1e-8) {
            return false;
        }
    }
    return tested == 200;
}

// Eulerian graphs pin the stationary law to the in-degree distribution.
bool eulerian_identity() {
    for (int i = 0; i < 50; ++i) {
        const Index n = 200 * (i + 1);
        const BiDegreeSequence seq =
            gen_eulerian_seq(n, 2, 6, derive_seed(202, static_cast<std::uint64_t>(i)));
        const Digraph g = sample_dcm(seq, derive_seed(203, static_cast<std::uint64_t>(i)));
        const DistVector pi = stationary(g, 1e-12).pi;
        if (tv(pi, DistVector::in_degree_dist(seq)) > 1e-9) return false;
        const double expected =
            static_cast<double>(seq.max_in_degree()) / static_cast<double>(seq.m);
        if (std::abs(pi.vec().maxCoeff() - expected) > 1e-9) return false;
    }
    return true;
}

// All bi-degree sequences with m <= total, as nondecreasing pair lists (one
// representative per relabeling class; the matching law only sees degrees).
std::vector<std::vector<std::pair<int, int>>> all_small_seqs(int total) {
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    std::function<void(int, int, std::pair<int, int>)> rec =
        [&](int in_left, int out_left, std::pair<int, int> lo) {
            if (in_left == 0 && out_left == 0) {
                out.push_back(cur);
                return;
            }
            for (int i = 0; i <= in_left; ++i) {
                for (int o = (i == 0) ? 1 : 0; o <= out_left; ++o) {
                    const std::pair<int, int> p{i, o};
                    if (p < lo) continue;
                    cur.push_back(p);
                    rec(in_left - i, out_left - o, p);
                    cur.pop_back();
                }
            }
        };
    for (int m = 1; m <= total; ++m) rec(m, m, {0, 0});
    return out;
}

// Chi-square uniformity of both samplers over all m! bijections, on every
// sequence with m <= 4.
bool matching_uniformity() {
    constexpr std::int64_t kSamples = 100000;
    std::uint64_t tag = 0;
    for (const auto& pairs : all_small_seqs(4)) {
        const BiDegreeSequence seq = make_sequence(pairs);
        if (seq.m < 2) continue;  // a single bijection, trivially uniform
        std::size_t cells = 1;
        for (std::int64_t k = 2; k <= seq.m; ++k) cells *= static_cast<std::size_t>(k);

        std::vector<std::int64_t> dcm_counts(cells, 0);
        std::vector<std::int64_t> seq_counts(cells, 0);
        for (std::int64_t s = 0; s < kSamples; ++s) {
            const auto u = static_cast<std::uint64_t>(s);
            const Digraph g = sample_dcm(seq, derive_seed(tag, u));
            ++dcm_counts[testutil::matching_rank(g.matching)];
            const SequentialResult sr =
                sequential_generate(seq, PriorityRule::fixed_index, derive_seed(tag + 1, u));
            ++seq_counts[testutil::matching_rank(sr.graph.matching)];
        }
        if (testutil::uniform_chi_square_p(dcm_counts, kSamples) <= 0.001) return false;
        if (testutil::uniform_chi_square_p(seq_counts, kSamples) <= 0.001) return false;
        tag += 2;
    }
    return true;
}

// Sharp mixing transition around the entropic time.
bool cutoff_band() {
    int ok = 0;
    const std::vector<double> rhos{0.5, 1.5};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const BiDegreeSequence seq = gen_powerlaw_seq(4096, 2.5, 2, derive_seed(404, s));
        const Digraph g = sample_dcm(seq, derive_seed(405, s));
        try {
            const MixProfile profile = mix_profile(g, rhos, StartMode::sample(64), s);
            if (profile.rows[0].d_tv >= 0.75 && profile.rows[1].d_tv <= 0.25) ++ok;
        } catch (const Error&) {
        }
    }
    return ok >= 18;
}

// pi_max sandwiched between (1 - 0.1) Delta^-/m and 30 log(n) Delta^-/m.
bool pi_max_sandwich() {
    int ok = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const BiDegreeSequence seq = gen_powerlaw_seq(10000, 2.5, 2, derive_seed(505, s));
        const Digraph g = sample_dcm(seq, derive_seed(506, s));
        try {
            const DistVector pi = stationary(g, default_tol(10000)).pi;
            const ExtremeReport rep = extreme_report(g, pi);
            if (rep.lower_flag && rep.upper_flag) ++ok;
        } catch (const Error&) {
        }
    }
    if (ok < 45) std::fprintf(stderr, "pi_max sandwich: %d/50 seeds in band, 45 needed\n", ok);
    return ok >= 45;
}

// Bulk of the rescaled stationary values matches the fixed-point limit law.
bool bulk_w1() {
    {
        const Digraph g = sample_dcm(regular_sequence(10000, 3), 606);
        const DistVector pi = stationary(g, default_tol(10000)).pi;
        BulkSettings settings;
        settings.seed = 607;
        if (bulk_compare(g, pi, settings).w1 != 0.0) return false;
    }
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const BiDegreeSequence seq = gen_powerlaw_seq(10000, 2.5, 3, derive_seed(608, s));
        const Digraph g = sample_dcm(seq, derive_seed(609, s));
        try {
            const DistVector pi = stationary(g, default_tol(10000)).pi;
            BulkSettings settings;
            settings.seed = derive_seed(610, s);
            if (bulk_compare(g, pi, settings).w1 <= 0.15) ++ok;
        } catch (const Error&) {
        }
    }
    return ok >= 18;
}

// Stationary and PageRank score measures inherit the in-degree power law.
bool power_law_transfer() {
    const std::vector<double> grid{0.1, 0.2, 0.3};
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const BiDegreeSequence seq = gen_powerlaw_seq(100000, 2.5, 2, derive_seed(707, s));
        const Digraph g = sample_dcm(seq, derive_seed(708, s));
        try {
            const DistVector pi = stationary(g, default_tol(100000)).pi;
            const TailClassification psi = classify_tail(psi_measure(pi), 2.5, 0.4, grid);
            const DistVector pr =
                pagerank(g, PageRankParams{0.25, DistVector::uniform(100000)},
                         default_tol(100000));
            const TailClassification psi_pr = classify_tail(psi_measure(pr), 2.5, 0.4, grid);
            if (psi.kind == TailKind::power_law && psi_pr.kind == TailKind::power_law) ++ok;
        } catch (const Error&) {
        }
    }
    return ok >= 16;
}

// Skeleton edge counts obey the n^{1 - a kappa + 0.3} envelope, and every
// per-root expansion obeys the deterministic 2/w_min cap.
bool skeleton_bound() {
    const double a = 0.25;
    const double bound = std::pow(10000.0, 1.0 - a * 2.5 + 0.3);
    int ok = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const BiDegreeSequence seq = gen_powerlaw_seq(10000, 2.5, 2, derive_seed(808, s));
        const Digraph g = sample_dcm(seq, derive_seed(809, s));
        const Skeleton sk = build_skeleton(g, a);
        const double threshold = std::pow(10000.0, a);
        for (std::int32_t z : sk.roots) {
            const double w_min = threshold / static_cast<double>(seq.in_deg[z]);
            const WeightedExpansion exp = weighted_expand(g, z, w_min);
            if (static_cast<double>(exp.kappa) > 2.0 / w_min) return false;
        }
        if (static_cast<double>(sk.edge_count) <= bound) ++ok;
    }
    return ok >= 48;
}

// Monte Carlo mean/variance of the tree martingale against the exact mean
// and the second-moment bound 2(A - 1) d_y^-.
bool martingale_statistics() {
    const BiDegreeSequence seq = gen_powerlaw_seq(2000, 2.5, 2, 909);
    std::int32_t y = 0;
    seq.in_deg.maxCoeff(&y);
    const double dy = static_cast<double>(seq.in_deg[y]);
    double big_a = 0.0;
    for (Index v = 0; v < seq.n(); ++v) {
        const double r =
            static_cast<double>(seq.in_deg[v]) / static_cast<double>(seq.out_deg[v]);
        big_a += static_cast<double>(seq.in_deg[v]) / static_cast<double>(seq.m) * r * r;
    }

    const int trials = 10000;
    const int h = 6;
    const TreeSampler sampler(seq);
    Rng rng(910);
    std::vector<double> values(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const MarkedTree tree = sampler.sample(y, h, Direction::in, rng);
        values[static_cast<std::size_t>(t)] = martingale_M(tree, seq, h);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= trials;
    double var = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        var += d * d;
        m4 += d * d * d * d;
    }
    var /= trials;
    m4 /= trials;
    const double se_mean = std::sqrt(var / trials);
    const double se_var = std::sqrt(std::max(0.0, m4 - var * var) / trials);
    if (std::abs(mean - dy) > 3.0 * se_mean) return false;
    return var <= 2.0 * (big_a - 1.0) * dy + 3.0 * se_var;
}

// PageRank lower bound for every interior alpha; exact endpoints.
bool pagerank_inequalities() {
    Rng rng(1010);
    const std::vector<double> alphas{0.01, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.99};

    std::vector<Digraph> instances;
    for (std::uint64_t rep = 0; rep < 30; ++rep) {
        instances.push_back(sample_dcm(random_small_seq(6, rng), derive_seed(1010, rep)));
    }
    instances.push_back(sample_dcm(gen_powerlaw_seq(1000, 2.5, 2, 1011), 1012));
    instances.push_back(sample_dcm(gen_eulerian_seq(500, 2, 6, 1013), 1014));

    for (const Digraph& g : instances) {
        const DistVector lambda = DistVector::uniform(g.n());
        for (double alpha : alphas) {
            const PageRankParams params{alpha, lambda};
            const DistVector pr = pagerank(g, params, 1e-10);
            if (!pagerank_bounds_check(g, params, pr).lower_ok) return false;
        }
    }

    const Digraph& g = instances.back();
    Vec raw(g.n());
    for (Index i = 0; i < g.n(); ++i) raw(i) = static_cast<double>(i % 7 + 1);
    const DistVector lambda(raw);
    const DistVector at_one = pagerank(g, PageRankParams{1.0, lambda}, 1e-10);
    if ((at_one.vec() - lambda.vec()).cwiseAbs().maxCoeff() != 0.0) return false;

    const DistVector at_zero =
        pagerank(g, PageRankParams{0.0, DistVector::uniform(g.n())}, 1e-12);
    return tv(at_zero, stationary(g, 1e-12).pi) <= 1e-8;
}

// Full figure protocol: 500 samples per n, per-sample hub dominance, and the
// pilot-registered ratio band [1, 10].
bool figure_protocol() {
    const std::vector<Index> ns{1000, 10000};
    const FigureSimResult r = figure_sim(ns, 500, 2.5, 2, 0.25, 4242);
    if (!r.per_sample_ok) return false;
    if (r.averages.size() != 2 || r.histogram.empty()) return false;
    for (const auto& row : r.averages) {
        if (!(row.ratio_pi >= 1.0 && row.ratio_pi <= 10.0)) return false;
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria{
        {"dense oracle equivalence on 200 small multigraphs", dense_oracle_equivalence},
        {"Eulerian stationary identity on 50 sequences", eulerian_identity},
        {"matching uniformity chi-square on all sequences with m <= 4",
         matching_uniformity},
        {"mixing cutoff band at the entropic time", cutoff_band},
        {"pi_max sandwich between degree bounds", pi_max_sandwich},
        {"bulk W1 against the fixed-point limit law", bulk_w1},
        {"power-law transfer to stationary and PageRank scores", power_law_transfer},
        {"skeleton edge bound and 2/w_min cap", skeleton_bound},
        {"tree martingale mean and variance statistics", martingale_statistics},
        {"PageRank lower bound and exact endpoints", pagerank_inequalities},
        {"figure protocol ratio band", figure_protocol},
    };

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "criterion %zu raised: %s\n", i + 1, e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2zu (%s): %s [%.1fs]\n", i + 1, criteria[i].label,
                    ok ? "PASS" : "FAIL", secs);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
