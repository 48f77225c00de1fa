#pragma once

// JSON and CSV forms of the library's values. Every JSON document carries
// "schema": 1.

#include "sandrank/bigraph.hpp"
#include "sandrank/experiment.hpp"
#include "sandrank/reduction.hpp"
#include "sandrank/sandpile.hpp"
#include "sandrank/theory.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>

namespace sandrank::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {schema, n_left, n_right, edges: [[left, right], ...]} with side-local indices.
json to_json(const graph::BipartiteGraph& g);
/// Throws InvalidParams on malformed documents or out-of-range edges.
graph::BipartiteGraph graph_from_json(const json& doc);

/// {schema, factors: ["d1", ...], order: "decimal", free_rank}. Factors are
/// decimal strings as they routinely exceed 64 bits.
json to_json(const sandpile::GroupInvariants& group);

/// {schema, params: {n, alpha, p, offset}, pmf: [[rank, prob], ...]}.
json to_json(const theory::RankDistribution& dist);

json to_json(const reduction::PipelineReport& report);
json to_json(const harness::ExperimentConfig& cfg);
json to_json(const harness::ComparisonStats& stats);
/// Summary without the per-trial list (that goes to CSV).
json to_json(const harness::ExperimentResult& result);
json to_json(const harness::SweepResult& sweep);

/// Columns: trial,seed,observation.
void write_csv(std::ostream& os, const harness::ExperimentResult& result);

} // namespace sandrank::io
