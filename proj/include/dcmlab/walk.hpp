#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "dcmlab/graph.hpp"

namespace dcmlab {

using Vec = Eigen::VectorXd;

/// Dense probability vector over [n]; entries nonnegative, renormalized on
/// construction so the sum is within 1e-9 of 1.
class DistVector {
public:
    explicit DistVector(Vec probs);

    static DistVector uniform(Index n);
    static DistVector delta(Index n, Index x);
    static DistVector in_degree_dist(const BiDegreeSequence& seq);   // mu_in
    static DistVector out_degree_dist(const BiDegreeSequence& seq);  // mu_out

    const Vec& vec() const { return p_; }
    double operator()(Index i) const { return p_(i); }
    Index size() const { return p_.size(); }

private:
    Vec p_;
};

/// Total variation distance 0.5 * |mu - nu|_1.
double tv(const DistVector& mu, const DistVector& nu);

/// One transition step: (mu P)(x) = sum_y mu(y) m(y,x) / d_y^+.
DistVector apply_P(const Digraph& g, const DistVector& mu);

struct StationaryResult {
    DistVector pi;
    int iters = 0;
    double residual = 0.0;
};

/// Power iteration from mu_in with TV residual stopping; averages the last
/// two iterates when oscillation is detected.
StationaryResult stationary(const Digraph& g, double tol, int max_iters = 100000);

/// Default stationary/PageRank tolerance at a given scale.
double default_tol(Index n);

struct StartMode {
    bool all = true;
    int k = 64;
    static StartMode all_starts() { return {true, 0}; }
    static StartMode sample(int k) { return {false, k}; }
};

struct MixProfileRow {
    std::int64_t t = 0;
    double rho = 0.0;
    double d_tv = 0.0;
    std::int64_t starts_used = 0;
};

struct MixProfile {
    std::vector<MixProfileRow> rows;
    bool sampled_starts = false;  // d_tv is a lower bound on the max when true
    bool non_mixing = false;
    double t_ent = 0.0;
};

/// TV-to-stationarity profile at t = floor(rho * T_ent), maximized over the
/// chosen start vertices.
MixProfile mix_profile(const Digraph& g, std::span<const double> rhos, StartMode mode,
                       std::uint64_t seed);

/// Smallest t with max-start TV < eps (doubling + bisection on the monotone
/// profile).
std::int64_t mixing_time(const Digraph& g, double eps, StartMode mode = StartMode::all_starts(),
                         std::uint64_t seed = 0, std::int64_t t_cap = 1 << 20);

/// Uniform-start average mu_t = (1/n) sum_x P^t(x, .).
DistVector mu_t(const Digraph& g, std::int64_t t);

struct PageRankParams {
    double alpha = 0.25;
    DistVector lambda;
};

/// PageRank score pi_{alpha,lambda}: geometric series sum_k alpha (1-alpha)^k
/// lambda P^k for alpha > 0, the plain stationary distribution at alpha = 0.
DistVector pagerank(const Digraph& g, const PageRankParams& params, double tol);

struct PageRankBounds {
    double lower_bound = 0.0;  // alpha (1-alpha) lambda_min Delta^- / Delta^+
    double max_score = 0.0;
    double upper_ratio = 0.0;  // max / (log n (lambda_max + Delta^-/m))
    bool lower_ok = false;
};

PageRankBounds pagerank_bounds_check(const Digraph& g, const PageRankParams& params,
                                     const DistVector& pi_pr);

}  // namespace dcmlab
