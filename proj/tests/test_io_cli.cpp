#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcmlab/experiment.hpp"
#include "dcmlab/io.hpp"
#include "dcmlab/walk.hpp"

using namespace dcmlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dcmlab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("sequence file roundtrip") {
    const BiDegreeSequence seq = gen_powerlaw_seq(50, 2.5, 2, 3);
    std::stringstream ss;
    write_sequence(ss, seq);
    const BiDegreeSequence back = read_sequence(ss);
    CHECK((back.in_deg == seq.in_deg).all());
    CHECK((back.out_deg == seq.out_deg).all());
    CHECK(back.m == seq.m);
}

TEST_CASE("malformed sequence files are rejected") {
    std::stringstream bad_header("0 0\n");
    CHECK_THROWS_AS(read_sequence(bad_header), MalformedSequence);
    std::stringstream truncated("3 6\n2 2\n2 2\n");
    CHECK_THROWS_AS(read_sequence(truncated), MalformedSequence);
    std::stringstream wrong_total("2 5\n2 2\n2 2\n");
    CHECK_THROWS_AS(read_sequence(wrong_total), MalformedSequence);
}

TEST_CASE("binary matching roundtrip") {
    const fs::path dir = temp_dir("matching");
    const BiDegreeSequence seq = gen_powerlaw_seq(80, 2.5, 2, 5);
    const Digraph g = sample_dcm(seq, 7);
    write_matching(dir / "g.matching", g);
    const Digraph back = read_matching(dir / "g.matching", seq);
    CHECK(back.matching == g.matching);
    fs::remove_all(dir);
}

TEST_CASE("csv headers") {
    std::stringstream dist;
    write_distribution(dist, DistVector::uniform(3));
    std::string line;
    std::getline(dist, line);
    CHECK(line == "vertex,prob");

    std::stringstream edges;
    const Digraph g = sample_dcm(regular_sequence(4, 2), 1);
    write_edge_list(edges, g);
    std::getline(edges, line);
    CHECK(line == "4 8");
}

TEST_CASE("classification json carries the grid") {
    std::vector<double> values(1000);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = std::pow(1000.0 / static_cast<double>(i + 1), 1.0 / 2.5);
    }
    const std::vector<double> grid{0.1, 0.2};
    const TailClassification cls =
        classify_tail(EmpiricalMeasure(values), 2.5, 0.3, grid);
    const nlohmann::json j = nlohmann::json::parse(classification_json(cls));
    CHECK(j["kind"] == "power_law");
    CHECK(j["kappa"] == 2.5);
    CHECK(j["grid"].size() == 2);
    CHECK(j["grid"][0].contains("a"));
    CHECK(j["grid"][0].contains("pass"));
}

TEST_CASE("config parsing errors name the offending field") {
    SUBCASE("unknown kind") {
        const auto j = nlohmann::json::parse(
            R"({"kind":"nope","sequence":{"generator":"regular"},"n":[10]})");
        CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("kind"), ConfigError);
    }
    SUBCASE("missing sequence") {
        const auto j = nlohmann::json::parse(R"({"kind":"generate","n":[10]})");
        CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("sequence"), ConfigError);
    }
    SUBCASE("alpha out of range surfaces at run time") {
        const auto j = nlohmann::json::parse(
            R"({"kind":"pagerank","sequence":{"generator":"regular","d":3},
                "n":[20],"params":{"alpha":1.5}})");
        const ExperimentConfig config = parse_config(j);
        ExperimentConfig local = config;
        local.out_dir = temp_dir("alpha");
        CHECK_THROWS_WITH_AS(run_experiment(local), doctest::Contains("alpha"), ConfigError);
        fs::remove_all(local.out_dir);
    }
    SUBCASE("bad seed_count") {
        const auto j = nlohmann::json::parse(
            R"({"kind":"generate","sequence":{"generator":"regular"},"n":[10],"seed_count":0})");
        CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("seed_count"), ConfigError);
    }
}

TEST_CASE("stationary experiment reports a unit ratio on regular sequences") {
    ExperimentConfig config;
    config.kind = "stationary";
    config.sequence.generator = "regular";
    config.sequence.d = 3;
    config.n_values = {100};
    config.seed_count = 2;
    config.params = nlohmann::json::object();
    config.out_dir = temp_dir("stationary");
    CHECK(run_experiment(config) == kExitOk);

    std::ifstream is(config.out_dir / "summary.json");
    REQUIRE(is.good());
    nlohmann::json summary;
    is >> summary;
    CHECK(summary["version"] == kVersion);
    CHECK(summary["rows"].size() == 2);
    for (const auto& row : summary["rows"]) {
        CHECK(row["ratio_lower"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
    }
    fs::remove_all(config.out_dir);
}

TEST_CASE("experiment outputs are reproducible") {
    auto run = [](const fs::path& dir) {
        ExperimentConfig config;
        config.kind = "generate";
        config.sequence.generator = "powerlaw";
        config.n_values = {60};
        config.seed_count = 3;
        config.base_seed = 9;
        config.params = nlohmann::json::object();
        config.out_dir = dir;
        REQUIRE(run_experiment(config) == kExitOk);
    };
    const fs::path a = temp_dir("repro_a");
    const fs::path b = temp_dir("repro_b");
    run(a);
    run(b);
    for (const auto& entry : fs::directory_iterator(a)) {
        if (entry.path().filename() == "summary.json") continue;  // embeds out_dir
        std::ifstream fa(entry.path(), std::ios::binary);
        std::ifstream fb(b / entry.path().filename(), std::ios::binary);
        REQUIRE(fb.good());
        const std::string ca((std::istreambuf_iterator<char>(fa)), {});
        const std::string cb((std::istreambuf_iterator<char>(fb)), {});
        CHECK(ca == cb);
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("figure_sim on a small grid") {
    const std::vector<Index> ns{64, 128};
    const FigureSimResult r1 = figure_sim(ns, 5, 2.5, 2, 0.25, 77);
    const FigureSimResult r2 = figure_sim(ns, 5, 2.5, 2, 0.25, 77);
    CHECK(r1.per_sample_ok);
    CHECK(r1.averages.size() == 2);
    for (std::size_t i = 0; i < r1.averages.size(); ++i) {
        CHECK(r1.averages[i].pi_hub_avg <= r1.averages[i].pi_max_avg);
        CHECK(r1.averages[i].pi_max_avg == r2.averages[i].pi_max_avg);
        CHECK(r1.averages[i].ratio_pi >= 1.0);
    }
    std::int64_t total = 0;
    for (const auto& row : r1.histogram) total += row.count;
    CHECK(total == 5 * (64 + 128));
    CHECK_THROWS_AS(figure_sim(std::vector<Index>{2000000}, 1, 2.5, 2, 0.25, 1), ConfigError);
}

TEST_CASE("selftest passes") { CHECK(selftest() == kExitOk); }
