#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcmlab/experiment.hpp"
#include "dcmlab/io.hpp"

namespace {

struct CommonOpts {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> jobs;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* c = cmd->add_option("--config", opts.config, "path to the JSON experiment config");
    if (config_required) c->required();
    cmd->add_option("--seed", opts.seed, "override the base seed");
    cmd->add_option("--out", opts.out, "override the output directory");
    cmd->add_option("--jobs", opts.jobs, "worker count (env DCMLAB_JOBS takes precedence)");
}

int resolve_jobs(const std::optional<int>& cli_jobs, int config_jobs) {
    if (const char* env = std::getenv("DCMLAB_JOBS")) {
        try {
            const int j = std::stoi(env);
            if (j >= 1) return j;
        } catch (...) {
        }
        throw dcmlab::ConfigError("environment variable DCMLAB_JOBS must be a positive integer");
    }
    if (cli_jobs) {
        if (*cli_jobs < 1) throw dcmlab::ConfigError("--jobs must be at least 1");
        return *cli_jobs;
    }
    return config_jobs;
}

int run_kind(const std::string& kind, const CommonOpts& opts) {
    std::ifstream is(opts.config);
    if (!is) throw dcmlab::ConfigError("cannot open config file " + opts.config);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw dcmlab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw dcmlab::ConfigError("config root must be a JSON object");
    if (j.contains("kind") && j["kind"] != kind) {
        throw dcmlab::ConfigError("config field 'kind' does not match the subcommand");
    }
    j["kind"] = kind;
    dcmlab::ExperimentConfig config = dcmlab::parse_config(j);
    if (opts.seed) config.base_seed = *opts.seed;
    if (opts.out) config.out_dir = *opts.out;
    config.jobs = resolve_jobs(opts.jobs, config.jobs);
    return dcmlab::run_experiment(config);
}

int run_validate(const CommonOpts& opts) {
    std::ifstream is(opts.config);
    if (!is) throw dcmlab::ConfigError("cannot open config file " + opts.config);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw dcmlab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("sequence")) {
        throw dcmlab::ConfigError("validate config requires a 'sequence' object");
    }
    const dcmlab::SequenceSpec spec = dcmlab::parse_sequence_spec(j["sequence"]);
    dcmlab::Index n = 0;
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 1) {
            throw dcmlab::ConfigError("field 'n' must be a positive integer");
        }
        n = static_cast<dcmlab::Index>(j["n"].get<std::int64_t>());
    } else if (spec.file.empty()) {
        throw dcmlab::ConfigError("field 'n' is required unless 'sequence.file' is set");
    }
    std::uint64_t seed = 1;
    if (opts.seed) seed = *opts.seed;
    const dcmlab::BiDegreeSequence seq = spec.realize(n, seed);

    dcmlab::AssumptionParams params;
    if (j.contains("params")) {
        const auto& p = j["params"];
        if (p.contains("eta")) params.eta = p["eta"].get<double>();
        if (p.contains("C")) params.C = p["C"].get<double>();
        if (p.contains("K")) params.K = p["K"].get<int>();
    }
    const dcmlab::ValidationReport report = dcmlab::validate(seq, params);
    nlohmann::json out;
    out["n"] = seq.n();
    out["m"] = seq.m;
    out["delta_minus"] = report.delta_minus;
    out["delta_plus"] = report.delta_plus;
    out["min_out_ok"] = report.min_out_ok;
    out["out_cap_ok"] = report.out_cap_ok;
    out["moment_ok"] = report.moment_ok;
    out["moment_sum"] = report.moment_sum;
    out["pass"] = report.pass();
    std::cout << out.dump(2) << '\n';
    return report.pass() ? dcmlab::kExitOk : dcmlab::kExitThresholdFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed configuration model laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dcmlab::kVersion);

    const std::vector<std::string> kinds = {"generate", "stationary", "mix-profile",
                                            "pagerank", "bulk-w1",    "tails",
                                            "skeleton", "figure-sim"};
    std::vector<CommonOpts> kind_opts(kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        auto* cmd = app.add_subcommand(kinds[i], "run the " + kinds[i] + " experiment");
        add_common(cmd, kind_opts[i], true);
    }
    CommonOpts validate_opts;
    auto* validate_cmd =
        app.add_subcommand("validate", "check a degree sequence against the model assumptions");
    add_common(validate_cmd, validate_opts, true);
    auto* selftest_cmd = app.add_subcommand("selftest", "run the exact-invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? dcmlab::kExitOk : dcmlab::kExitConfigError;
    }

    try {
        if (selftest_cmd->parsed()) return dcmlab::selftest();
        if (validate_cmd->parsed()) return run_validate(validate_opts);
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            if (app.get_subcommand(kinds[i])->parsed()) {
                return run_kind(kinds[i], kind_opts[i]);
            }
        }
        std::cerr << "error: no subcommand selected\n";
        return dcmlab::kExitConfigError;
    } catch (const dcmlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return dcmlab::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dcmlab::kExitRuntimeError;
    }
}
