#include "dcmlab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dcmlab/graph.hpp"
#include "dcmlab/io.hpp"
#include "dcmlab/limits.hpp"
#include "dcmlab/measure.hpp"
#include "dcmlab/tails.hpp"
#include "dcmlab/walk.hpp"

namespace dcmlab {

namespace {

using nlohmann::json;

double get_double(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
    return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw ConfigError("field '" + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::vector<double> get_grid(const json& j, const std::string& key,
                             std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_array() || j[key].empty()) {
        throw ConfigError("field '" + key + "' must be a nonempty array");
    }
    std::vector<double> grid;
    for (const auto& x : j[key]) {
        if (!x.is_number()) throw ConfigError("field '" + key + "' must contain numbers");
        grid.push_back(x.get<double>());
    }
    return grid;
}

double checked_alpha(const json& params) {
    const double alpha = get_double(params, "alpha", 0.25);
    if (alpha < 0.0 || alpha > 1.0) {
        throw ConfigError("field 'alpha' must lie in [0, 1]");
    }
    return alpha;
}

}  // namespace

BiDegreeSequence SequenceSpec::realize(Index n, std::uint64_t seed) const {
    if (!file.empty()) return read_sequence(std::filesystem::path(file));
    if (generator == "powerlaw") return gen_powerlaw_seq(n, kappa, d_out, seed);
    if (generator == "regular") return regular_sequence(n, d);
    if (generator == "eulerian") return gen_eulerian_seq(n, d_min, d_max, seed);
    if (generator == "extremal") return gen_extremal_seq(n, hub_exponent, d_out, seed);
    throw ConfigError("field 'generator' has unknown value '" + generator + "'");
}

json SequenceSpec::to_json() const {
    json j;
    if (!file.empty()) {
        j["file"] = file;
        return j;
    }
    j["generator"] = generator;
    if (generator == "powerlaw") {
        j["kappa"] = kappa;
        j["d_out"] = d_out;
    } else if (generator == "regular") {
        j["d"] = d;
    } else if (generator == "eulerian") {
        j["d_min"] = d_min;
        j["d_max"] = d_max;
    } else if (generator == "extremal") {
        j["hub_exponent"] = hub_exponent;
        j["d_out"] = d_out;
    }
    return j;
}

SequenceSpec parse_sequence_spec(const json& j) {
    if (!j.is_object()) throw ConfigError("field 'sequence' must be an object");
    SequenceSpec spec;
    if (j.contains("file")) {
        if (!j["file"].is_string()) throw ConfigError("field 'sequence.file' must be a string");
        spec.file = j["file"].get<std::string>();
        return spec;
    }
    if (!j.contains("generator") || !j["generator"].is_string()) {
        throw ConfigError("field 'sequence.generator' is required when no file is given");
    }
    spec.generator = j["generator"].get<std::string>();
    if (spec.generator != "powerlaw" && spec.generator != "regular" &&
        spec.generator != "eulerian" && spec.generator != "extremal") {
        throw ConfigError("field 'sequence.generator' has unknown value '" + spec.generator +
                          "'");
    }
    spec.kappa = get_double(j, "kappa", spec.kappa);
    if (spec.kappa <= 1.0) throw ConfigError("field 'sequence.kappa' must exceed 1");
    spec.d_out = get_int(j, "d_out", spec.d_out);
    if (spec.d_out < 2) throw ConfigError("field 'sequence.d_out' must be at least 2");
    spec.d = get_int(j, "d", spec.d);
    if (spec.d < 2) throw ConfigError("field 'sequence.d' must be at least 2");
    spec.d_min = get_int(j, "d_min", spec.d_min);
    spec.d_max = get_int(j, "d_max", spec.d_max);
    if (spec.d_min < 2 || spec.d_max < spec.d_min) {
        throw ConfigError("fields 'sequence.d_min'/'sequence.d_max' must satisfy 2 <= d_min <= d_max");
    }
    spec.hub_exponent = get_double(j, "hub_exponent", spec.hub_exponent);
    if (spec.hub_exponent <= 0.0 || spec.hub_exponent >= 1.0) {
        throw ConfigError("field 'sequence.hub_exponent' must lie in (0, 1)");
    }
    return spec;
}

json ExperimentConfig::to_json() const {
    json j;
    j["kind"] = kind;
    j["sequence"] = sequence.to_json();
    j["n"] = n_values;
    j["base_seed"] = base_seed;
    j["seed_count"] = seed_count;
    j["params"] = params;
    j["out_dir"] = out_dir.string();
    j["jobs"] = jobs;
    return j;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    ExperimentConfig config;
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw ConfigError("field 'kind' is required and must be a string");
    }
    config.kind = j["kind"].get<std::string>();
    static const char* kinds[] = {"generate", "stationary", "mix-profile", "pagerank",
                                  "bulk-w1",  "tails",      "skeleton",    "figure-sim"};
    bool known = false;
    for (const char* k : kinds) known = known || config.kind == k;
    if (!known) throw ConfigError("field 'kind' has unknown value '" + config.kind + "'");

    if (!j.contains("sequence")) throw ConfigError("field 'sequence' is required");
    config.sequence = parse_sequence_spec(j["sequence"]);

    if (j.contains("n")) {
        if (!j["n"].is_array() || j["n"].empty()) {
            throw ConfigError("field 'n' must be a nonempty array");
        }
        for (const auto& x : j["n"]) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 1) {
                throw ConfigError("field 'n' must contain positive integers");
            }
            config.n_values.push_back(static_cast<Index>(x.get<std::int64_t>()));
        }
    } else if (config.sequence.file.empty()) {
        throw ConfigError("field 'n' is required unless 'sequence.file' is set");
    } else {
        config.n_values.push_back(0);  // placeholder; size comes from the file
    }

    if (j.contains("base_seed")) {
        if (!j["base_seed"].is_number_integer()) {
            throw ConfigError("field 'base_seed' must be an integer");
        }
        config.base_seed = j["base_seed"].get<std::uint64_t>();
    }
    config.seed_count = get_int(j, "seed_count", 1);
    if (config.seed_count < 1) throw ConfigError("field 'seed_count' must be at least 1");
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("field 'params' must be an object");
        config.params = j["params"];
    } else {
        config.params = json::object();
    }
    if (j.contains("out_dir")) {
        if (!j["out_dir"].is_string()) throw ConfigError("field 'out_dir' must be a string");
        config.out_dir = j["out_dir"].get<std::string>();
    }
    config.jobs = get_int(j, "jobs", 1);
    if (config.jobs < 1) throw ConfigError("field 'jobs' must be at least 1");
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

namespace {

struct RunTask {
    Index n = 0;
    int seed_index = 0;
    std::uint64_t seed = 0;
};

struct RunOutcome {
    json row;
    std::string error;  // empty on success
};

std::string run_stem(const ExperimentConfig& config, const RunTask& task) {
    std::ostringstream os;
    os << config.kind << "_n" << task.n << "_seed" << task.seed_index;
    return os.str();
}

// Executes one (n, seed) run, writes its files, and returns the summary row.
json run_one(const ExperimentConfig& config, const RunTask& task) {
    const std::uint64_t seq_seed = derive_seed(task.seed, 0x5351u);
    const std::uint64_t graph_seed = derive_seed(task.seed, 0x4752u);
    const BiDegreeSequence seq = config.sequence.realize(task.n, seq_seed);
    const std::string stem = run_stem(config, task);
    json row;
    row["n"] = seq.n();
    row["m"] = seq.m;
    row["seed_index"] = task.seed_index;
    row["seed"] = task.seed;

    if (config.kind == "generate") {
        const Digraph g = sample_dcm(seq, graph_seed);
        write_edge_list(config.out_dir / (stem + ".edges"), g);
        write_matching(config.out_dir / (stem + ".matching"), g);
        row["simple"] = is_simple(g);
        return row;
    }

    const Digraph g = sample_dcm(seq, graph_seed);
    const double tol = get_double(config.params, "tol", default_tol(seq.n()));

    if (config.kind == "stationary") {
        const StationaryResult res = stationary(g, tol);
        write_distribution(config.out_dir / (stem + ".csv"), res.pi);
        const ExtremeReport ext = extreme_report(g, res.pi);
        row["iters"] = res.iters;
        row["residual"] = res.residual;
        row["pi_max"] = ext.pi_max;
        row["ratio_lower"] = ext.ratio_lower;
        row["ratio_upper"] = ext.ratio_upper;
        row["lower_ok"] = ext.lower_flag;
        row["upper_ok"] = ext.upper_flag;
        row["argmax_coincide"] = ext.argmax_coincide;
        row["pass"] = ext.lower_flag && ext.upper_flag;
        return row;
    }

    if (config.kind == "mix-profile") {
        const auto rhos = get_grid(config.params, "rho", {0.5, 1.0, 1.5});
        const int starts = get_int(config.params, "starts", 64);
        if (starts < 1) throw ConfigError("field 'starts' must be at least 1");
        const StartMode mode = get_bool(config.params, "all_starts", false)
                                   ? StartMode::all_starts()
                                   : StartMode::sample(starts);
        const MixProfile profile = mix_profile(g, rhos, mode, task.seed);
        write_mix_profile(config.out_dir / (stem + ".csv"), profile);
        row["t_ent"] = profile.t_ent;
        row["non_mixing"] = profile.non_mixing;
        json rows = json::array();
        bool early_high = true;
        bool late_low = true;
        for (const auto& r : profile.rows) {
            rows.push_back({{"t", r.t}, {"rho", r.rho}, {"d_tv", r.d_tv}});
            if (r.rho <= 0.5) early_high = early_high && r.d_tv >= 0.75;
            if (r.rho >= 1.5) late_low = late_low && r.d_tv <= 0.25;
        }
        row["profile"] = rows;
        row["pass"] = early_high && late_low;
        return row;
    }

    if (config.kind == "pagerank") {
        const double alpha = checked_alpha(config.params);
        const PageRankParams params{alpha, DistVector::uniform(seq.n())};
        const DistVector pr = pagerank(g, params, tol);
        write_distribution(config.out_dir / (stem + ".csv"), pr);
        const PageRankBounds bounds = pagerank_bounds_check(g, params, pr);
        row["alpha"] = alpha;
        row["max_score"] = bounds.max_score;
        row["lower_bound"] = bounds.lower_bound;
        row["upper_ratio"] = bounds.upper_ratio;
        row["pass"] = bounds.lower_ok;
        return row;
    }

    if (config.kind == "bulk-w1") {
        const StationaryResult res = stationary(g, tol);
        BulkSettings settings;
        settings.pool_size = get_int(config.params, "pool_size", 100000);
        settings.generations = get_int(config.params, "generations", 30);
        settings.ln_samples = get_int(config.params, "ln_samples", 100000);
        settings.seed = task.seed;
        const BulkCompareResult bulk = bulk_compare(g, res.pi, settings);
        write_measure(config.out_dir / (stem + "_psi.txt"), bulk.psi);
        write_measure(config.out_dir / (stem + "_ln.txt"), bulk.ln_hat);
        row["w1"] = bulk.w1;
        row["pass"] = bulk.w1 <= get_double(config.params, "w1_threshold", 0.15);
        return row;
    }

    if (config.kind == "tails") {
        const double kappa = get_double(config.params, "kappa", config.sequence.kappa);
        const double eps = get_double(config.params, "eps", 0.4);
        if (eps <= 0.0) throw ConfigError("field 'eps' must be positive");
        const auto grid = get_grid(config.params, "a_grid", {0.1, 0.2, 0.3});
        const StationaryResult res = stationary(g, tol);
        const EmpiricalMeasure phi = in_degree_measure(seq);
        const EmpiricalMeasure psi = psi_measure(res.pi);
        const TailCompareTable table = tail_compare(phi, psi, kappa, eps, grid);
        write_tail_table(config.out_dir / (stem + ".csv"), table);
        bool psi_ok = table.psi_power_law;
        row["phi_power_law"] = table.phi_power_law;
        row["psi_power_law"] = table.psi_power_law;
        if (get_bool(config.params, "pagerank", true)) {
            const double alpha = checked_alpha(config.params);
            const PageRankParams pr_params{alpha, DistVector::uniform(seq.n())};
            const DistVector pr = pagerank(g, pr_params, tol);
            const TailCompareTable pr_table =
                tail_compare(phi, psi_measure(pr), kappa, eps, grid);
            write_tail_table(config.out_dir / (stem + "_pagerank.csv"), pr_table);
            row["pr_power_law"] = pr_table.psi_power_law;
            psi_ok = psi_ok && pr_table.psi_power_law;
        }
        row["pass"] = psi_ok;
        return row;
    }

    if (config.kind == "skeleton") {
        const double a = get_double(config.params, "a", 0.25);
        if (a <= 0.0 || a >= 1.0) throw ConfigError("field 'a' must lie in (0, 1)");
        const double kappa = get_double(config.params, "kappa", config.sequence.kappa);
        const Skeleton skeleton = build_skeleton(g, a);
        write_skeleton(config.out_dir / (stem + ".csv"), skeleton);
        const double bound =
            std::pow(static_cast<double>(seq.n()), 1.0 - a * kappa + 0.3);
        row["roots"] = skeleton.roots.size();
        row["edge_count"] = skeleton.edge_count;
        row["edge_bound"] = bound;
        row["pass"] = static_cast<double>(skeleton.edge_count) <= bound;
        if (get_bool(config.params, "rank_link", false)) {
            const StationaryResult res = stationary(g, tol);
            const SkeletonRankReport rank = skeleton_rank_link(g, res.pi, skeleton);
            row["rank_checked"] = rank.checked;
            row["rank_fraction"] = rank.fraction;
        }
        return row;
    }

    throw ConfigError("field 'kind' has unknown value '" + config.kind + "'");
}

void write_figure_tables(const std::filesystem::path& out_dir, const FigureSimResult& result) {
    {
        std::ofstream os(out_dir / "figure_averages.csv");
        if (!os) throw Error("cannot open figure_averages.csv for writing");
        os << std::setprecision(17);
        os << "n,samples,pi_max_avg,pi_hub_avg,pr_max_avg,pr_hub_avg,ratio_pi,ratio_pr\n";
        for (const auto& r : result.averages) {
            os << r.n << ',' << r.samples << ',' << r.pi_max_avg << ',' << r.pi_hub_avg << ','
               << r.pr_max_avg << ',' << r.pr_hub_avg << ',' << r.ratio_pi << ','
               << r.ratio_pr << '\n';
        }
    }
    std::ofstream os(out_dir / "figure_histogram.csv");
    if (!os) throw Error("cannot open figure_histogram.csv for writing");
    os << std::setprecision(17);
    os << "lo,hi,count\n";
    for (const auto& r : result.histogram) {
        os << r.lo << ',' << r.hi << ',' << r.count << '\n';
    }
}

int run_figure_sim(const ExperimentConfig& config) {
    const int seeds_per_n = get_int(config.params, "seeds_per_n", 500);
    if (seeds_per_n < 1) throw ConfigError("field 'seeds_per_n' must be at least 1");
    const double kappa = get_double(config.params, "kappa", 2.5);
    const int d_out = get_int(config.params, "d_out", 2);
    const double alpha = checked_alpha(config.params);
    const bool override_guard = get_bool(config.params, "override_guard", false);
    const FigureSimResult result = figure_sim(config.n_values, seeds_per_n, kappa, d_out,
                                              alpha, config.base_seed, override_guard);
    write_figure_tables(config.out_dir, result);

    json summary;
    summary["version"] = kVersion;
    summary["config"] = config.to_json();
    json rows = json::array();
    bool ratio_ok = true;
    for (const auto& r : result.averages) {
        rows.push_back({{"n", r.n},
                        {"samples", r.samples},
                        {"pi_max_avg", r.pi_max_avg},
                        {"pi_hub_avg", r.pi_hub_avg},
                        {"pr_max_avg", r.pr_max_avg},
                        {"pr_hub_avg", r.pr_hub_avg},
                        {"ratio_pi", r.ratio_pi},
                        {"ratio_pr", r.ratio_pr}});
        ratio_ok = ratio_ok && r.ratio_pi >= 1.0 && r.ratio_pi <= 10.0;
    }
    summary["rows"] = rows;
    summary["per_sample_ok"] = result.per_sample_ok;
    summary["ratio_band_ok"] = ratio_ok;
    std::ofstream os(config.out_dir / "summary.json");
    if (!os) throw Error("cannot open summary.json for writing");
    os << summary.dump(2) << '\n';

    if (!result.per_sample_ok) return kExitRuntimeError;
    if (get_bool(config.params, "check", false) && !ratio_ok) return kExitThresholdFailure;
    return kExitOk;
}

}  // namespace

namespace {

// Rejects out-of-domain parameters before any run starts so that a bad config
// surfaces as a config error, not a per-run failure.
void validate_params(const ExperimentConfig& config) {
    if (config.kind == "pagerank" || config.kind == "tails" || config.kind == "figure-sim") {
        checked_alpha(config.params);
    }
    if (config.kind == "mix-profile") {
        for (double rho : get_grid(config.params, "rho", {0.5, 1.0, 1.5})) {
            if (rho <= 0.0) throw ConfigError("field 'rho' must contain positive values");
        }
        if (get_int(config.params, "starts", 64) < 1) {
            throw ConfigError("field 'starts' must be at least 1");
        }
    }
    if (config.kind == "skeleton") {
        const double a = get_double(config.params, "a", 0.25);
        if (a <= 0.0 || a >= 1.0) throw ConfigError("field 'a' must lie in (0, 1)");
    }
    if (config.kind == "tails") {
        if (get_double(config.params, "eps", 0.4) <= 0.0) {
            throw ConfigError("field 'eps' must be positive");
        }
    }
}

}  // namespace

int run_experiment(const ExperimentConfig& config) {
    validate_params(config);
    std::filesystem::create_directories(config.out_dir);
    if (config.kind == "figure-sim") return run_figure_sim(config);

    std::vector<RunTask> tasks;
    for (Index n : config.n_values) {
        for (int s = 0; s < config.seed_count; ++s) {
            const auto run_index = static_cast<std::uint64_t>(tasks.size());
            tasks.push_back(RunTask{n, s, config.base_seed + run_index});
        }
    }

    std::vector<RunOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                outcomes[i].row = run_one(config, tasks[i]);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const int workers = std::min<int>(config.jobs, static_cast<int>(tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    json summary;
    summary["version"] = kVersion;
    summary["config"] = config.to_json();
    json rows = json::array();
    json errors = json::array();
    std::int64_t passed = 0;
    std::int64_t pass_rows = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            errors.push_back({{"n", tasks[i].n},
                              {"seed_index", tasks[i].seed_index},
                              {"error", outcomes[i].error}});
            continue;
        }
        rows.push_back(outcomes[i].row);
        if (outcomes[i].row.contains("pass")) {
            ++pass_rows;
            if (outcomes[i].row["pass"].get<bool>()) ++passed;
        }
    }
    summary["rows"] = rows;
    summary["errors"] = errors;
    if (pass_rows > 0) {
        summary["pass_fraction"] =
            static_cast<double>(passed) / static_cast<double>(pass_rows);
    }
    std::ofstream os(config.out_dir / "summary.json");
    if (!os) throw Error("cannot open summary.json for writing");
    os << summary.dump(2) << '\n';

    if (!errors.empty()) return kExitRuntimeError;
    if (get_bool(config.params, "check", false) && pass_rows > 0) {
        const double required = get_double(config.params, "pass_threshold", 0.9);
        const double fraction =
            static_cast<double>(passed) / static_cast<double>(pass_rows);
        if (fraction < required) return kExitThresholdFailure;
    }
    return kExitOk;
}

FigureSimResult figure_sim(std::span<const Index> ns, int seeds_per_n, double kappa, int d_out,
                           double alpha, std::uint64_t base_seed, bool override_guard) {
    if (seeds_per_n < 1) throw std::invalid_argument("seeds_per_n must be positive");
    for (Index n : ns) {
        if (n > 1000000 && !override_guard) {
            throw ConfigError("figure-sim refuses n > 10^6 without the override flag");
        }
    }
    FigureSimResult result;

    // pooled histogram of n pi(v), geometric bins over [1e-2, 1e4)
    constexpr int kBins = 36;
    const double lo_edge = 1e-2;
    const double ratio = std::pow(1e6, 1.0 / kBins);
    std::vector<std::int64_t> counts(kBins + 2, 0);  // +underflow/overflow

    std::uint64_t run = 0;
    for (Index n : ns) {
        FigureSimResult::AverageRow row;
        row.n = n;
        row.samples = seeds_per_n;
        for (int s = 0; s < seeds_per_n; ++s, ++run) {
            const std::uint64_t seed = base_seed + run;
            const BiDegreeSequence seq =
                gen_powerlaw_seq(n, kappa, d_out, derive_seed(seed, 0x5351u));
            const Digraph g = sample_dcm(seq, derive_seed(seed, 0x4752u));
            const double tol = default_tol(n);
            const DistVector pi = stationary(g, tol).pi;
            const DistVector pr =
                pagerank(g, PageRankParams{alpha, DistVector::uniform(n)}, tol);
            Index hub = 0;
            seq.in_deg.maxCoeff(&hub);
            const double pi_max = pi.vec().maxCoeff();
            const double pr_max = pr.vec().maxCoeff();
            result.per_sample_ok =
                result.per_sample_ok && pi(hub) <= pi_max && pr(hub) <= pr_max;
            row.pi_max_avg += pi_max;
            row.pi_hub_avg += pi(hub);
            row.pr_max_avg += pr_max;
            row.pr_hub_avg += pr(hub);
            for (Index v = 0; v < n; ++v) {
                const double x = static_cast<double>(n) * pi(v);
                int bin;
                if (x < lo_edge) {
                    bin = 0;
                } else {
                    const int k = static_cast<int>(std::log(x / lo_edge) / std::log(ratio));
                    bin = std::min(k, kBins - 1) + 1;
                }
                ++counts[static_cast<std::size_t>(bin)];
            }
        }
        const double denom = static_cast<double>(seeds_per_n);
        row.pi_max_avg /= denom;
        row.pi_hub_avg /= denom;
        row.pr_max_avg /= denom;
        row.pr_hub_avg /= denom;
        row.ratio_pi = row.pi_max_avg / row.pi_hub_avg;
        row.ratio_pr = row.pr_max_avg / row.pr_hub_avg;
        result.averages.push_back(row);
    }

    result.histogram.push_back(FigureSimResult::HistogramRow{0.0, lo_edge, counts[0]});
    double edge = lo_edge;
    for (int b = 0; b < kBins; ++b) {
        const double next_edge = edge * ratio;
        result.histogram.push_back(
            FigureSimResult::HistogramRow{edge, next_edge, counts[static_cast<std::size_t>(b) + 1]});
        edge = next_edge;
    }
    result.histogram.push_back(FigureSimResult::HistogramRow{
        edge, std::numeric_limits<double>::infinity(), counts[kBins + 1]});
    return result;
}

int selftest() {
    int failures = 0;
    auto check = [&](bool ok, const char* what) {
        if (!ok) {
            ++failures;
            std::cerr << "selftest FAILED: " << what << '\n';
        }
    };
    try {
        // regular graphs have an exactly uniform stationary distribution
        const BiDegreeSequence reg = regular_sequence(100, 3);
        const Digraph g = sample_dcm(reg, 7);
        const DistVector pi = stationary(g, 1e-12).pi;
        check(tv(pi, DistVector::uniform(100)) <= 1e-12, "regular stationary is uniform");
        check(w1(psi_measure(pi), psi_measure(pi)) == 0.0, "W1 of a measure with itself is 0");

        // alpha = 1 teleports exactly; alpha = 0 recovers the stationary law
        const PageRankParams teleport{1.0, DistVector::uniform(100)};
        check(tv(pagerank(g, teleport, 1e-12), teleport.lambda) == 0.0,
              "pagerank at alpha = 1 returns lambda");
        const PageRankParams stat{0.0, DistVector::uniform(100)};
        check(tv(pagerank(g, stat, 1e-12), pi) <= 1e-10, "pagerank at alpha = 0 is stationary");

        // Eulerian identity: pi = mu_in
        const BiDegreeSequence eul = gen_eulerian_seq(200, 2, 5, 11);
        const Digraph ge = sample_dcm(eul, 13);
        check(tv(stationary(ge, 1e-12).pi, DistVector::in_degree_dist(eul)) <= 1e-9,
              "Eulerian stationary equals the in-degree distribution");

        // degrees are realized exactly by the sampler
        check(is_simple(sample_simple_dcm(reg, 3, 1000)), "simple sampler returns simple");

        // expansion edge bound holds on a fresh power-law instance
        const BiDegreeSequence pl = gen_powerlaw_seq(500, 2.5, 2, 17);
        const Digraph gp = sample_dcm(pl, 19);
        const Skeleton skeleton = build_skeleton(gp, 0.25);
        check(skeleton.edge_count >= 0, "skeleton builds");
    } catch (const std::exception& e) {
        std::cerr << "selftest FAILED with exception: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    if (failures > 0) return kExitRuntimeError;
    std::cout << "selftest OK\n";
    return kExitOk;
}

}  // namespace dcmlab
