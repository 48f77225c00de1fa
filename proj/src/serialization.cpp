#include "sandrank/serialization.hpp"

#include "sandrank/errors.hpp"

#include <ostream>

namespace sandrank::io {

json to_json(const graph::BipartiteGraph& g) {
    json edges = json::array();
    for (auto [l, r] : g.edges()) edges.push_back({l, r});
    return {{"schema", kSchemaVersion}, {"n_left", g.n_left()}, {"n_right", g.n_right()}, {"edges", edges}};
}

graph::BipartiteGraph graph_from_json(const json& doc) {
    try {
        if (doc.contains("schema") && doc.at("schema").get<int>() != kSchemaVersion)
            throw InvalidParams("unsupported graph schema " + doc.at("schema").dump());
        const auto nl = doc.at("n_left").get<std::size_t>();
        const auto nr = doc.at("n_right").get<std::size_t>();
        graph::BipartiteGraph g(nl, nr);
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw InvalidParams("edge must be a [left, right] pair");
            g.set_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>(), true);
        }
        return g;
    } catch (const json::exception& e) {
        throw InvalidParams(std::string("malformed graph JSON: ") + e.what());
    } catch (const IndexOutOfRange& e) {
        throw InvalidParams(e.what());
    }
}

json to_json(const sandpile::GroupInvariants& group) {
    json factors = json::array();
    for (const auto& d : group.factors) factors.push_back(d.get_str());
    return {{"schema", kSchemaVersion},
            {"factors", factors},
            {"order", group.order.get_str()},
            {"free_rank", group.free_rank}};
}

json to_json(const theory::RankDistribution& dist) {
    json pmf = json::array();
    for (std::size_t j = 0; j < dist.pmf.size(); ++j) pmf.push_back({j, dist.pmf[j]});
    return {{"schema", kSchemaVersion},
            {"params", {{"n", dist.n}, {"alpha", dist.alpha}, {"p", dist.p}, {"offset", dist.offset}}},
            {"pmf", pmf}};
}

json to_json(const reduction::PipelineReport& report) {
    json out{{"schema", kSchemaVersion},
             {"corank_direct", report.corank_direct},
             {"corank_schur", nullptr},
             {"r", report.r},
             {"cut", report.cut},
             {"d1_size", report.d1_size},
             {"d2_size", report.d2_size},
             {"regime", report.regime}};
    if (report.corank_schur) out["corank_schur"] = *report.corank_schur;
    return out;
}

json to_json(const harness::ExperimentConfig& cfg) {
    json out{{"kind", harness::to_string(cfg.kind)},
             {"n", cfg.n},
             {"alpha", cfg.alpha},
             {"q", cfg.q},
             {"p", cfg.p},
             {"trials", cfg.trials},
             {"seed", cfg.master_seed}};
    if (cfg.output_path) out["output_path"] = *cfg.output_path;
    return out;
}

json to_json(const harness::ComparisonStats& stats) {
    json out{{"mean_gap", stats.mean_gap},
             {"wasserstein1", stats.wasserstein1},
             {"quantile_coupling_tail", stats.quantile_coupling_tail},
             {"fitted_decay_rate", nullptr}};
    if (stats.fitted_decay_rate) out["fitted_decay_rate"] = *stats.fitted_decay_rate;
    return out;
}

json to_json(const harness::ExperimentResult& result) {
    json out{{"schema", kSchemaVersion},
             {"version", result.version},
             {"config", to_json(result.config)},
             {"trials", result.per_trial.size()},
             {"mean", result.mean},
             {"variance", result.variance},
             {"quantiles",
              {{"q01", result.quantiles[0]},
               {"q25", result.quantiles[1]},
               {"q50", result.quantiles[2]},
               {"q75", result.quantiles[3]},
               {"q99", result.quantiles[4]}}},
             {"wall_time_ms", result.wall_time_ms}};
    if (result.comparison) out["comparison"] = to_json(*result.comparison);
    if (result.wilson95) out["wilson95"] = {result.wilson95->lower, result.wilson95->upper};
    if (result.schur_mismatches) out["schur_mismatches"] = *result.schur_mismatches;
    return out;
}

json to_json(const harness::SweepResult& sweep) {
    const bool by_q = sweep.config.kind == harness::ExperimentKind::q_sweep;
    json rows = json::array();
    for (const auto& row : sweep.rows) {
        json r = by_q ? json{{"q", row.parameter}, {"mean", row.value}}
                      : json{{"n", static_cast<std::size_t>(row.parameter)}, {"mean_over_n", row.value}};
        r["result"] = to_json(row.result);
        rows.push_back(std::move(r));
    }
    return {{"schema", kSchemaVersion}, {"config", to_json(sweep.config)}, {"rows", rows}};
}

void write_csv(std::ostream& os, const harness::ExperimentResult& result) {
    os << "trial,seed,observation\n";
    for (std::size_t t = 0; t < result.per_trial.size(); ++t)
        os << t << ',' << result.trial_seeds[t] << ',' << result.per_trial[t] << '\n';
}

} // namespace sandrank::io
