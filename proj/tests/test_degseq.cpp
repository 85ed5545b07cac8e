#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcmlab/degseq.hpp"

using namespace dcmlab;

namespace {

// Out-degrees summing to the in-degree total, spread as evenly as possible.
Eigen::ArrayXi balance_out(const Eigen::ArrayXi& in_deg) {
    const Index n = in_deg.size();
    const std::int64_t total = in_deg.cast<std::int64_t>().sum();
    Eigen::ArrayXi out(n);
    const auto base = static_cast<int>(total / n);
    const auto extra = static_cast<Index>(total % n);
    for (Index v = 0; v < n; ++v) out[v] = base + (v < extra ? 1 : 0);
    return out;
}

BiDegreeSequence pareto_rank_seq(Index n, double kappa) {
    Eigen::ArrayXi in_deg(n);
    for (Index i = 0; i < n; ++i) {
        in_deg[i] = static_cast<int>(std::ceil(
            std::pow(static_cast<double>(n) / static_cast<double>(i + 1), 1.0 / kappa)));
    }
    return make_sequence(in_deg, balance_out(in_deg));
}

EmpiricalMeasure pareto_rank_measure(Index n, double kappa) {
    std::vector<double> values(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] =
            std::pow(static_cast<double>(n) / static_cast<double>(i + 1), 1.0 / kappa);
    }
    return EmpiricalMeasure(std::move(values));
}

}  // namespace

TEST_CASE("make_sequence enforces the balance invariant") {
    CHECK_THROWS_AS(make_sequence({{2, 1}, {1, 1}}), MalformedSequence);
    const BiDegreeSequence seq = make_sequence({{2, 1}, {1, 2}});
    CHECK(seq.m == 3);
    CHECK(seq.n() == 2);
}

TEST_CASE("validate assumption checks") {
    SUBCASE("regular sequence passes all three") {
        const BiDegreeSequence seq = regular_sequence(4, 2);
        const ValidationReport report = validate(seq, AssumptionParams{1.0, 10.0, 2});
        CHECK(report.min_out_ok);
        CHECK(report.out_cap_ok);
        CHECK(report.moment_ok);
        CHECK(report.moment_sum == doctest::Approx(32.0));
        CHECK(report.pass());
    }
    SUBCASE("min out-degree failure") {
        const BiDegreeSequence seq = make_sequence({{2, 1}, {2, 2}, {2, 3}});
        const ValidationReport report = validate(seq, AssumptionParams{1.0, 10.0, 3});
        CHECK_FALSE(report.min_out_ok);
    }
    SUBCASE("moment bound failure") {
        const BiDegreeSequence seq = make_sequence({{3, 2}, {1, 2}});
        const ValidationReport report = validate(seq, AssumptionParams{1.0, 3.0, 2});
        CHECK(report.moment_sum == doctest::Approx(28.0));
        CHECK_FALSE(report.moment_ok);
    }
}

TEST_CASE("entropic summary") {
    SUBCASE("constant out-degree 2") {
        const BiDegreeSequence seq = regular_sequence(1024, 2);
        const EntropicSummary ent = entropic(seq);
        CHECK(ent.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(ent.t_ent == doctest::Approx(10.0).epsilon(1e-12));
    }
    SUBCASE("mixed out-degrees") {
        const BiDegreeSequence seq = make_sequence({{3, 2}, {3, 4}, {3, 2}, {3, 4}});
        const EntropicSummary ent = entropic(seq);
        CHECK(ent.entropy == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("h_eps floors to zero at small scale") {
        const BiDegreeSequence seq = regular_sequence(100, 2);
        CHECK(entropic(seq, 0.2).h_eps == 0);
    }
    SUBCASE("degenerate out-degree rejected") {
        const BiDegreeSequence seq = make_sequence({{2, 1}, {1, 2}});
        CHECK_THROWS_AS(entropic(seq), DegenerateEntropy);
    }
    SUBCASE("vertex duplication preserves H and rescales t_ent") {
        const BiDegreeSequence seq = make_sequence({{3, 2}, {3, 4}, {3, 2}, {3, 4}});
        BiDegreeSequence doubled = make_sequence(
            {{3, 2}, {3, 4}, {3, 2}, {3, 4}, {3, 2}, {3, 4}, {3, 2}, {3, 4}});
        const EntropicSummary a = entropic(seq);
        const EntropicSummary b = entropic(doubled);
        CHECK(a.entropy == b.entropy);
        CHECK(b.t_ent == doctest::Approx(std::log(8.0) / a.entropy).epsilon(1e-15));
    }
}

TEST_CASE("classify_tail band checks") {
    SUBCASE("Pareto-rank family is power law at its own index") {
        const EmpiricalMeasure measure = pareto_rank_measure(1000, 2.5);
        const std::vector<double> grid{0.1, 0.2, 0.3};
        const TailClassification cls = classify_tail(measure, 2.5, 0.3, grid);
        CHECK(cls.kind == TailKind::power_law);
        CHECK(cls.witness_grid.size() == 3);
        for (const auto& check : cls.witness_grid) CHECK(check.pass);
    }
    SUBCASE("constant measure fails the lower band") {
        const EmpiricalMeasure measure(std::vector<double>(100, 1.0));
        const std::vector<double> grid{0.1};
        const TailClassification cls = classify_tail(measure, 2.0, 0.05, grid);
        CHECK(cls.kind == TailKind::none);
        CHECK_FALSE(cls.witness_grid[0].pass);
    }
    SUBCASE("one huge value breaks the cutoff clause") {
        std::vector<double> values(100, 0.0);
        values[0] = std::pow(100.0, 2.0 / 2.5);
        const EmpiricalMeasure measure(std::move(values));
        const std::vector<double> grid{0.1};
        const TailClassification cls = classify_tail(measure, 2.5, 0.1, grid);
        CHECK_FALSE(cls.cutoff_ok);
        CHECK(cls.kind == TailKind::none);
    }
    SUBCASE("wrong index by one is rejected at n = 10^4") {
        const EmpiricalMeasure measure = pareto_rank_measure(10000, 2.5);
        const std::vector<double> grid{0.25};
        CHECK(classify_tail(measure, 2.5, 0.2, grid).kind == TailKind::power_law);
        CHECK(classify_tail(measure, 3.5, 0.2, grid).kind == TailKind::none);
        CHECK(classify_tail(measure, 1.5, 0.2, grid).kind == TailKind::none);
    }
    SUBCASE("grid point at or above 1/kappa is rejected") {
        const EmpiricalMeasure measure = pareto_rank_measure(100, 2.5);
        const std::vector<double> grid{0.5};
        CHECK_THROWS_AS(classify_tail(measure, 2.5, 0.3, grid), std::invalid_argument);
    }
}

TEST_CASE("is_kappa_light size-biased tail") {
    SUBCASE("bounded in-degrees are light") {
        const BiDegreeSequence seq = regular_sequence(100, 2);
        const std::vector<double> grid{0.5};
        const KappaLightResult res = is_kappa_light(seq, 3.0, 0.1, grid);
        CHECK(res.light);
        CHECK(res.witnesses[0].tail == 0.0);
    }
    SUBCASE("Pareto-rank in-degrees are light at their index") {
        const BiDegreeSequence seq = pareto_rank_seq(10000, 2.5);
        const std::vector<double> grid{0.1, 0.2, 0.3};
        CHECK(is_kappa_light(seq, 2.5, 0.3, grid).light);
    }
    SUBCASE("an oversized hub is not light") {
        const Index n = 10000;
        Eigen::ArrayXi in_deg = Eigen::ArrayXi::Zero(n);
        in_deg[0] = static_cast<int>(std::pow(static_cast<double>(n), 0.6));
        const BiDegreeSequence seq = make_sequence(in_deg, balance_out(in_deg));
        const std::vector<double> grid{0.5};
        CHECK_FALSE(is_kappa_light(seq, 2.5, 0.05, grid).light);
    }
}

TEST_CASE("is_extremal") {
    SUBCASE("single dominant hub") {
        const Index n = 1000;
        Eigen::ArrayXi in_deg(n);
        in_deg[0] = 500;
        for (Index v = 1; v < n; ++v) in_deg[v] = v <= 501 ? 2 : 1;
        const BiDegreeSequence seq = make_sequence(in_deg, balance_out(in_deg));
        CHECK(is_extremal(seq, 0.1));
    }
    SUBCASE("tied maxima fail") {
        Eigen::ArrayXi in_deg(4);
        in_deg << 5, 5, 1, 1;
        const BiDegreeSequence seq = make_sequence(in_deg, balance_out(in_deg));
        CHECK_FALSE(is_extremal(seq, 0.1));
    }
    SUBCASE("flat in-degrees fail") {
        CHECK_FALSE(is_extremal(regular_sequence(100, 3), 0.1));
    }
}

TEST_CASE("gen_powerlaw_seq") {
    SUBCASE("balance and out-degrees forced") {
        const BiDegreeSequence seq = gen_powerlaw_seq(10, 2.5, 2, 123);
        CHECK(seq.in_deg.cast<std::int64_t>().sum() == 20);
        CHECK(seq.min_out_degree() == 2);
        CHECK(seq.max_out_degree() == 2);
    }
    SUBCASE("deterministic for a fixed seed") {
        const BiDegreeSequence a = gen_powerlaw_seq(500, 2.5, 2, 99);
        const BiDegreeSequence b = gen_powerlaw_seq(500, 2.5, 2, 99);
        CHECK((a.in_deg == b.in_deg).all());
    }
    SUBCASE("classifier accepts most seeds at n = 10^4") {
        const std::vector<double> grid{0.1, 0.2, 0.3};
        int hits = 0;
        for (int s = 0; s < 50; ++s) {
            const BiDegreeSequence seq =
                gen_powerlaw_seq(10000, 2.5, 2, 1000 + static_cast<std::uint64_t>(s));
            const TailClassification cls =
                classify_tail(in_degree_measure(seq), 2.5, 0.4, grid);
            if (cls.kind == TailKind::power_law) ++hits;
        }
        CHECK(hits >= 40);
    }
}

TEST_CASE("gen_eulerian_seq and gen_extremal_seq") {
    const BiDegreeSequence eul = gen_eulerian_seq(200, 2, 6, 7);
    CHECK((eul.in_deg == eul.out_deg).all());
    CHECK(eul.min_out_degree() >= 2);
    CHECK(eul.max_out_degree() <= 6);

    // the hub must beat (log n / margin) times the bulk degree, so the
    // exponent has to be large enough: 10000^0.6 = 251 vs bound 20 log n
    const BiDegreeSequence ext = gen_extremal_seq(10000, 0.6, 2, 7);
    CHECK(ext.in_deg.cast<std::int64_t>().sum() == ext.m);
    CHECK(is_extremal(ext, 0.1));
}
