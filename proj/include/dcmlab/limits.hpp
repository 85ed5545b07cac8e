#pragma once

#include <cstdint>
#include <vector>

#include "dcmlab/graph.hpp"
#include "dcmlab/measure.hpp"
#include "dcmlab/walk.hpp"

namespace dcmlab {

/// Pool of Z-samples evolved by population dynamics for the fixed-point
/// equation Z =d (1/d_J^+) sum_{k<=d_J^-} Z_k, J ~ mu_out.
struct PopulationState {
    std::vector<double> pool;
    int generation = 0;
    std::vector<double> step_w1;  // W1 between consecutive generations

    bool converged(double tol = 1e-3) const {
        return !step_w1.empty() && step_w1.back() < tol;
    }
};

PopulationState sfpe_population(const BiDegreeSequence& seq, Index pool_size, int generations,
                                std::uint64_t seed);

/// Draws from the limit law: X = (n/m) sum_{k<=d_I^-} Z_k with I uniform.
EmpiricalMeasure sample_Ln(const BiDegreeSequence& seq, const PopulationState& pop,
                           Index n_samples, std::uint64_t seed);

/// M_y(h) = sum over depth-h nodes a of d^-_{l(a)} prod_{i=1..h} 1/d^+_{l(a_i)};
/// M_y(0) = d_y^-.
double martingale_M(const MarkedTree& tree, const BiDegreeSequence& seq, int h);

struct BulkSettings {
    Index pool_size = 100000;
    int generations = 30;
    Index ln_samples = 100000;
    std::uint64_t seed = 0;
};

struct BulkCompareResult {
    double w1 = 0.0;
    EmpiricalMeasure psi;
    EmpiricalMeasure ln_hat;
};

/// W1 comparison between psi_n = {n pi(v)} and samples of the limit law.
BulkCompareResult bulk_compare(const Digraph& g, const DistVector& pi,
                               const BulkSettings& settings);

}  // namespace dcmlab
