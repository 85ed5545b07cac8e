#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcmlab/degseq.hpp"

namespace dcmlab {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by the library runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;
inline constexpr int kExitThresholdFailure = 3;

/// Sequence source: a file path or a named generator with its parameters.
struct SequenceSpec {
    std::string file;       // used when non-empty
    std::string generator;  // powerlaw | regular | eulerian | extremal
    double kappa = 2.5;
    int d_out = 2;
    int d = 3;          // regular degree
    int d_min = 2;      // eulerian range
    int d_max = 6;
    double hub_exponent = 0.4;

    BiDegreeSequence realize(Index n, std::uint64_t seed) const;
    nlohmann::json to_json() const;
};

SequenceSpec parse_sequence_spec(const nlohmann::json& j);

struct ExperimentConfig {
    std::string kind;  // generate | stationary | mix-profile | pagerank |
                       // bulk-w1 | tails | skeleton | figure-sim
    SequenceSpec sequence;
    std::vector<Index> n_values;
    std::uint64_t base_seed = 1;
    int seed_count = 1;
    nlohmann::json params;  // per-kind parameters
    std::filesystem::path out_dir = "results";
    int jobs = 1;

    nlohmann::json to_json() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Executes the experiment for every (n, seed) pair, writing per-run CSVs and
/// an aggregate summary.json. Returns an exit code.
int run_experiment(const ExperimentConfig& config);

struct FigureSimResult {
    struct AverageRow {
        Index n = 0;
        int samples = 0;
        double pi_max_avg = 0.0;
        double pi_hub_avg = 0.0;  // stationary value at the max in-degree vertex
        double pr_max_avg = 0.0;
        double pr_hub_avg = 0.0;
        double ratio_pi = 0.0;    // pi_max_avg / pi_hub_avg
        double ratio_pr = 0.0;
    };
    struct HistogramRow {
        double lo = 0.0;
        double hi = 0.0;
        std::int64_t count = 0;
    };
    std::vector<AverageRow> averages;        // table A
    std::vector<HistogramRow> histogram;     // table B, pooled n pi(v)
    bool per_sample_ok = true;               // pi_hub <= pi_max and PR_hub <= PR_max
};

/// Power-law DCM sampling protocol behind the figure-sim subcommand.
FigureSimResult figure_sim(std::span<const Index> ns, int seeds_per_n, double kappa, int d_out,
                           double alpha, std::uint64_t base_seed, bool override_guard = false);

/// Runs the exact-invariant suite; returns kExitOk or kExitRuntimeError.
int selftest();

}  // namespace dcmlab
