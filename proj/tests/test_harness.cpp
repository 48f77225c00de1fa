#include "doctest.h"

#include "sandrank/errors.hpp"
#include "sandrank/experiment.hpp"
#include "sandrank/rng.hpp"
#include "sandrank/sandpile.hpp"
#include "sandrank/serialization.hpp"

#include <cmath>
#include <sstream>

using namespace sandrank;
using namespace sandrank::harness;

namespace {

ExperimentConfig config(ExperimentKind kind, std::size_t n, double alpha, std::size_t trials) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.n = n;
    cfg.alpha = alpha;
    cfg.q = 0.5;
    cfg.p = 2;
    cfg.trials = trials;
    cfg.master_seed = 314;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    RandomStream a(5), b(5);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    RandomStream r(6);
    for (int i = 0; i < 1000; ++i) CHECK(r.uniform_below(7) < 7);
}

TEST_CASE("config validation and kind names") {
    for (auto kind : {ExperimentKind::prank, ExperimentKind::cyclicity, ExperimentKind::m_corank,
                      ExperimentKind::q_sweep, ExperimentKind::balanced_scaling})
        CHECK(parse_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_kind("nope"), InvalidConfig);
    auto cfg = config(ExperimentKind::prank, 20, 0.5, 0);
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.trials = 1;
    cfg.p = 6;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.p = 2;
    cfg.q = 1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    CHECK_THROWS_AS(run_cyclicity_experiment(config(ExperimentKind::prank, 20, 0.5, 5)), InvalidConfig);
    CHECK_THROWS_AS(run_balanced_scaling(config(ExperimentKind::balanced_scaling, 20, 0.5, 5)), InvalidConfig);
}

TEST_CASE("results do not depend on the thread count") {
    auto cfg = config(ExperimentKind::prank, 60, 0.25, 40);
    const auto one = run_prank_experiment(cfg);
    cfg.threads = 4;
    const auto four = run_prank_experiment(cfg);
    CHECK(one.per_trial == four.per_trial);
    CHECK(one.trial_seeds == four.trial_seeds);
    CHECK(one.per_trial.size() == 40);
    auto single = config(ExperimentKind::prank, 100, 0.25, 1);
    CHECK(run_prank_experiment(single).per_trial == run_prank_experiment(single).per_trial);
}

TEST_CASE("summary statistics") {
    ExperimentResult r;
    r.per_trial = {1, 2, 3, 4};
    summarize(r);
    CHECK(r.mean == 2.5);
    CHECK(r.variance == doctest::Approx(5.0 / 3.0));
    CHECK(r.quantiles[0] == 1);
    CHECK(r.quantiles[2] == 2);
    CHECK(r.quantiles[4] == 4);
    ExperimentResult one;
    one.per_trial = {7};
    summarize(one);
    CHECK(one.variance == 0.0);
}

TEST_CASE("comparison against an exactly sampled law") {
    const auto dist = theory::rank_pmf_theoretical(100, 0.25, 2);
    RandomStream rng(99);
    std::vector<std::int64_t> obs;
    for (int t = 0; t < 10000; ++t) obs.push_back(static_cast<std::int64_t>(dist.quantile(1.0 - rng.unit())));
    const auto stats = compare_to_theory(obs, dist);
    CHECK(stats.wasserstein1 <= 0.1);
    CHECK(stats.mean_gap <= 0.1);

    std::vector<std::int64_t> shifted = obs;
    for (auto& x : shifted) x += 3;
    const auto moved = compare_to_theory(shifted, dist);
    CHECK(moved.mean_gap == doctest::Approx(3.0).epsilon(0.05));
    CHECK(moved.wasserstein1 == doctest::Approx(3.0).epsilon(0.05));
    for (std::size_t m = 0; m + 1 < moved.quantile_coupling_tail.size(); ++m)
        CHECK(moved.quantile_coupling_tail[m] >= moved.quantile_coupling_tail[m + 1]);

    // Observations at the predicted quantiles, moved by 3: the coupling gap is exactly 3.
    std::vector<std::int64_t> exact_shift;
    for (int t = 0; t < 1000; ++t) exact_shift.push_back(static_cast<std::int64_t>(dist.quantile((t + 0.5) / 1000)) + 3);
    const auto tails = compare_to_theory(exact_shift, dist).quantile_coupling_tail;
    CHECK(tails[2] == 1.0);
    CHECK(tails[3] == 0.0);

    CHECK_THROWS_AS(compare_to_theory({}, dist), EmptyInput);
}

TEST_CASE("comparison with a point mass") {
    const auto dist = theory::rank_pmf_theoretical(2, 1.0, 2);
    const auto stats = compare_to_theory({0, 0, 0}, dist);
    CHECK(stats.wasserstein1 == 0.0);
    CHECK(stats.mean_gap == 0.0);
    CHECK_FALSE(stats.fitted_decay_rate.has_value());
}

TEST_CASE("coupling tails and fitted decay on a real run") {
    const auto res = run_prank_experiment(config(ExperimentKind::prank, 100, 0.25, 200));
    REQUIRE(res.comparison);
    const auto& tail = res.comparison->quantile_coupling_tail;
    REQUIRE(tail.size() == 10);
    for (std::size_t m = 0; m + 1 < tail.size(); ++m) CHECK(tail[m] >= tail[m + 1]);
    if (res.comparison->fitted_decay_rate) CHECK(*res.comparison->fitted_decay_rate > 0.0);
    CHECK(res.comparison->wasserstein1 >= 0.0);
}

TEST_CASE("Wilson interval") {
    const auto iv = wilson_interval(30, 100);
    CHECK(iv.lower == doctest::Approx(0.2189).epsilon(1e-3));
    CHECK(iv.upper == doctest::Approx(0.3958).epsilon(1e-3));
    const auto zero = wilson_interval(0, 50);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper > 0.0);
    CHECK(wilson_interval(50, 50).upper == 1.0);
    CHECK_THROWS_AS(wilson_interval(0, 0), EmptyInput);
}

TEST_CASE("cyclicity run attaches an interval containing the fraction") {
    const auto res = run_cyclicity_experiment(config(ExperimentKind::cyclicity, 20, 0.75, 40));
    REQUIRE(res.wilson95);
    CHECK(res.mean >= 0.0);
    CHECK(res.mean <= 1.0);
    CHECK(res.wilson95->lower <= res.mean);
    CHECK(res.mean <= res.wilson95->upper);
    CHECK_THROWS_AS(run_cyclicity_experiment(config(ExperimentKind::cyclicity, 300, 0.75, 1)), GuardExceeded);
}

TEST_CASE("p-rank by Smith form and by GF(p) agree on small sampled graphs") {
    const auto cfg = config(ExperimentKind::prank, 6, 1.0, 300);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto g = graph::sample_bipartite({cfg.n, cfg.alpha, cfg.q, derive_seed(cfg.master_seed, t)});
        const auto group = sandpile::sandpile_group(g);
        for (std::uint64_t p : {2u, 3u, 5u, 7u}) CHECK(sandpile::p_rank(g, p) == sandpile::p_rank(group, p));
    }
}

TEST_CASE("q sweep") {
    auto cfg = config(ExperimentKind::q_sweep, 40, 0.25, 20);
    const auto sweep = run_qsweep(cfg);
    CHECK(sweep.rows.size() == 5);
    CHECK(sweep.rows.front().parameter == 0.2);
    CHECK(run_qsweep(cfg, {0.5}).rows.size() == 1);
    for (const auto& row : sweep.rows) CHECK(row.value == row.result.mean);
}

TEST_CASE("balanced scaling") {
    auto cfg = config(ExperimentKind::balanced_scaling, 50, 1.0, 10);
    const auto sweep = run_balanced_scaling(cfg, {20, 40});
    REQUIRE(sweep.rows.size() == 2);
    CHECK(sweep.rows[1].parameter == 40);
    CHECK(sweep.rows[1].value == doctest::Approx(sweep.rows[1].result.mean / 40));
}

TEST_CASE("serialization") {
    const auto g = graph::BipartiteGraph::from_edges(2, 3, {{0, 1}, {1, 2}, {1, 0}});
    const auto doc = io::to_json(g);
    CHECK(doc.at("schema") == 1);
    CHECK(io::graph_from_json(doc) == g);
    CHECK(io::graph_from_json(io::json::parse(R"({"n_left":1,"n_right":1,"edges":[[0,0]]})")) ==
          graph::BipartiteGraph::complete(1, 1));
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"({"n_left":1,"n_right":1,"edges":[[0,3]]})")),
                    InvalidParams);
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"({"n_left":1})")), InvalidParams);
    CHECK_THROWS_AS(io::graph_from_json(io::json::parse(R"({"schema":2,"n_left":1,"n_right":1,"edges":[]})")),
                    InvalidParams);

    const auto group = io::to_json(sandpile::sandpile_group(graph::BipartiteGraph::complete(2, 3)));
    CHECK(group.at("factors") == io::json::array({"2", "6"}));
    CHECK(group.at("order") == "12");

    const auto dist = io::to_json(theory::rank_pmf_theoretical(2, 0.5, 2));
    CHECK(dist.at("pmf").size() == 2);
    CHECK(dist.at("pmf")[0][1] == 0.75);

    auto res = run_prank_experiment(config(ExperimentKind::prank, 20, 0.5, 3));
    const auto rj = io::to_json(res);
    CHECK(rj.at("trials") == 3);
    CHECK(rj.at("config").at("kind") == "prank");
    CHECK(rj.contains("comparison"));
    std::ostringstream csv;
    io::write_csv(csv, res);
    const std::string text = csv.str();
    CHECK(text.rfind("trial,seed,observation\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("balanced scaling trend at the default sizes") {
    auto cfg = config(ExperimentKind::balanced_scaling, 50, 1.0, 200);
    const auto sweep = run_balanced_scaling(cfg);
    REQUIRE(sweep.rows.size() == 3);
    MESSAGE("mean/n: " << sweep.rows[0].value << ", " << sweep.rows[1].value << ", " << sweep.rows[2].value);
    CHECK(sweep.rows[0].value > sweep.rows[1].value);
    CHECK(sweep.rows[1].value > sweep.rows[2].value);
    CHECK(sweep.rows[2].value <= 0.05);
}
