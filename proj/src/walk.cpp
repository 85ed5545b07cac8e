#include "dcmlab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcmlab {

DistVector::DistVector(Vec probs) : p_(std::move(probs)) {
    if (p_.size() < 1) throw std::invalid_argument("distribution must be nonempty");
    if ((p_.array() < 0.0).any()) {
        throw std::invalid_argument("distribution entries must be nonnegative");
    }
    const double sum = p_.sum();
    if (!(sum > 0.0)) throw std::invalid_argument("distribution must have positive mass");
    if (sum != 1.0) p_ /= sum;
}

DistVector DistVector::uniform(Index n) {
    return DistVector(Vec::Constant(n, 1.0 / static_cast<double>(n)));
}

DistVector DistVector::delta(Index n, Index x) {
    Vec p = Vec::Zero(n);
    p(x) = 1.0;
    return DistVector(std::move(p));
}

DistVector DistVector::in_degree_dist(const BiDegreeSequence& seq) {
    return DistVector(seq.in_deg.cast<double>().matrix() / static_cast<double>(seq.m));
}

DistVector DistVector::out_degree_dist(const BiDegreeSequence& seq) {
    return DistVector(seq.out_deg.cast<double>().matrix() / static_cast<double>(seq.m));
}

double tv(const DistVector& mu, const DistVector& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("distribution length mismatch");
    return 0.5 * (mu.vec() - nu.vec()).cwiseAbs().sum();
}

namespace {

// Raw transition step on plain vectors; callers wrap in DistVector as needed.
Vec step_P(const Digraph& g, const Vec& mu) {
    const Index n = g.n();
    Vec res = Vec::Zero(n);
    for (Index v = 0; v < n; ++v) {
        const double mass = mu(v);
        if (mass == 0.0) continue;
        const double w = mass / static_cast<double>(g.seq.out_deg[v]);
        for (std::int64_t t = g.tail_offset[static_cast<std::size_t>(v)];
             t < g.tail_offset[static_cast<std::size_t>(v) + 1]; ++t) {
            res(g.out_neighbor[static_cast<std::size_t>(t)]) += w;
        }
    }
    return res;
}

double tv_raw(const Vec& a, const Vec& b) { return 0.5 * (a - b).cwiseAbs().sum(); }

void require_no_dangling(const Digraph& g) {
    if (g.seq.min_out_degree() == 0) {
        throw DanglingVertex("graph has a vertex with out-degree 0");
    }
}

}  // namespace

DistVector apply_P(const Digraph& g, const DistVector& mu) {
    require_no_dangling(g);
    if (mu.size() != g.n()) throw std::invalid_argument("distribution length mismatch");
    return DistVector(step_P(g, mu.vec()));
}

double default_tol(Index n) { return n <= 10000 ? 1e-10 : 1e-8; }

StationaryResult stationary(const Digraph& g, double tol, int max_iters) {
    require_no_dangling(g);
    Vec cur = DistVector::in_degree_dist(g.seq).vec();
    double prev_residual = std::numeric_limits<double>::infinity();
    int non_decreasing = 0;
    for (int iter = 1; iter <= max_iters; ++iter) {
        Vec nxt = step_P(g, cur);
        const double residual = tv_raw(nxt, cur);
        if (residual <= tol) {
            return StationaryResult{DistVector(std::move(cur)), iter, residual};
        }
        if (residual >= prev_residual) {
            if (++non_decreasing >= 2) {
                // period-2 oscillation: average the last two iterates
                nxt = 0.5 * (nxt + cur);
                non_decreasing = 0;
            }
        } else {
            non_decreasing = 0;
        }
        prev_residual = residual;
        cur = std::move(nxt);
    }
    throw NoConvergence("stationary distribution did not converge in " +
                        std::to_string(max_iters) + " iterations");
}

namespace {

// max over the chosen starts of TV(P^t(x, .), pi), for each requested t
std::vector<double> max_start_tv(const Digraph& g, const Vec& pi,
                                 const std::vector<Index>& starts,
                                 const std::vector<std::int64_t>& ts) {
    std::vector<double> best(ts.size(), 0.0);
    for (Index x : starts) {
        Vec cur = Vec::Zero(g.n());
        cur(x) = 1.0;
        std::int64_t t = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            while (t < ts[i]) {
                cur = step_P(g, cur);
                ++t;
            }
            best[i] = std::max(best[i], tv_raw(cur, pi));
        }
    }
    return best;
}

std::vector<Index> pick_starts(const Digraph& g, StartMode mode, std::uint64_t seed) {
    std::vector<Index> starts;
    if (mode.all || mode.k >= g.n()) {
        starts.resize(static_cast<std::size_t>(g.n()));
        for (Index x = 0; x < g.n(); ++x) starts[static_cast<std::size_t>(x)] = x;
    } else {
        Rng rng(derive_seed(seed, 0x5741u));  // start-sampling substream
        starts.reserve(static_cast<std::size_t>(mode.k));
        for (int i = 0; i < mode.k; ++i) starts.push_back(uniform_below(rng, g.n()));
    }
    return starts;
}

}  // namespace

MixProfile mix_profile(const Digraph& g, std::span<const double> rhos, StartMode mode,
                       std::uint64_t seed) {
    for (double rho : rhos) {
        if (rho <= 0.0) throw std::invalid_argument("rho values must be positive");
    }
    const EntropicSummary ent = entropic(g.seq);
    const DistVector pi = stationary(g, default_tol(g.n())).pi;

    std::vector<double> sorted_rhos(rhos.begin(), rhos.end());
    std::sort(sorted_rhos.begin(), sorted_rhos.end());
    std::vector<std::int64_t> ts;
    ts.reserve(sorted_rhos.size());
    for (double rho : sorted_rhos) {
        ts.push_back(static_cast<std::int64_t>(std::floor(rho * ent.t_ent)));
    }

    const auto starts = pick_starts(g, mode, seed);
    const auto d_tvs = max_start_tv(g, pi.vec(), starts, ts);

    MixProfile profile;
    profile.t_ent = ent.t_ent;
    profile.sampled_starts = !mode.all && mode.k < g.n();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        profile.rows.push_back(MixProfileRow{ts[i], sorted_rhos[i], d_tvs[i],
                                             static_cast<std::int64_t>(starts.size())});
    }
    // A TV plateau well above 0 at the largest times indicates a chain that
    // is not mixing (periodic structure).
    const std::size_t r = profile.rows.size();
    if (r >= 2 && profile.rows[r - 1].d_tv > 0.25 &&
        std::abs(profile.rows[r - 1].d_tv - profile.rows[r - 2].d_tv) < 1e-12 &&
        profile.rows[r - 1].t > profile.rows[r - 2].t) {
        profile.non_mixing = true;
    }
    return profile;
}

std::int64_t mixing_time(const Digraph& g, double eps, StartMode mode, std::uint64_t seed,
                         std::int64_t t_cap) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("eps must be in (0,1)");
    const DistVector pi = stationary(g, default_tol(g.n())).pi;
    const auto starts = pick_starts(g, mode, seed);
    auto worst_tv = [&](std::int64_t t) {
        return max_start_tv(g, pi.vec(), starts, {t})[0];
    };
    if (worst_tv(0) < eps) return 0;
    std::int64_t hi = 1;
    while (worst_tv(hi) >= eps) {
        hi *= 2;
        if (hi > t_cap) throw NoConvergence("mixing time exceeds cap");
    }
    std::int64_t lo = hi / 2;  // worst_tv(lo) >= eps
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (worst_tv(mid) < eps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

DistVector mu_t(const Digraph& g, std::int64_t t) {
    require_no_dangling(g);
    Vec cur = DistVector::uniform(g.n()).vec();
    for (std::int64_t i = 0; i < t; ++i) cur = step_P(g, cur);
    return DistVector(std::move(cur));
}

DistVector pagerank(const Digraph& g, const PageRankParams& params, double tol) {
    if (params.alpha < 0.0 || params.alpha > 1.0) {
        throw std::invalid_argument("alpha must be in [0,1]");
    }
    if (params.lambda.size() != g.n()) {
        throw std::invalid_argument("teleport distribution length mismatch");
    }
    const double alpha = params.alpha;
    if (alpha == 1.0) return params.lambda;
    if (alpha == 0.0) return stationary(g, tol).pi;
    require_no_dangling(g);
    // sum_k alpha (1-alpha)^k lambda P^k, truncated when the geometric tail
    // drops below tol
    Vec cur = params.lambda.vec();
    Vec acc = alpha * cur;
    double coef = alpha;        // alpha (1-alpha)^k
    double tail = 1.0 - alpha;  // sum of the coefficients not yet added
    while (tail >= tol) {
        cur = step_P(g, cur);
        coef *= 1.0 - alpha;
        acc += coef * cur;
        tail *= 1.0 - alpha;
    }
    return DistVector(std::move(acc));
}

PageRankBounds pagerank_bounds_check(const Digraph& g, const PageRankParams& params,
                                     const DistVector& pi_pr) {
    PageRankBounds bounds;
    const double lambda_min = params.lambda.vec().minCoeff();
    const double lambda_max = params.lambda.vec().maxCoeff();
    const double delta_minus = static_cast<double>(g.seq.max_in_degree());
    const double delta_plus = static_cast<double>(g.seq.max_out_degree());
    bounds.lower_bound =
        params.alpha * (1.0 - params.alpha) * lambda_min * delta_minus / delta_plus;
    bounds.max_score = pi_pr.vec().maxCoeff();
    bounds.lower_ok = bounds.lower_bound <= bounds.max_score;
    const double denom = std::log(static_cast<double>(g.n())) *
                         (lambda_max + delta_minus / static_cast<double>(g.m()));
    bounds.upper_ratio = denom > 0.0 ? bounds.max_score / denom : 0.0;
    return bounds;
}

}  // namespace dcmlab
