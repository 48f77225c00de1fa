#pragma once

// Property and oracle checks behind `sandrank verify`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sandrank::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED5A2D;

/// Random square matrices over p in {2, 3, 5, 7} with an invertible block:
/// corank of the Schur complement equals corank of the matrix.
CheckResult check_schur_preservation(std::size_t instances, std::uint64_t seed);

/// Closed-form conditional binomial mean equals direct summation, exactly,
/// for n <= max_n, alpha in {1/5, 2/5, 1/2, 3/5, 4/5} and 1 <= s < n.
CheckResult check_conditional_mean_identity(std::size_t max_n = 40);

/// K(2,3) and K(2,2) against minors and spanning-tree enumeration.
CheckResult check_small_graph_groups();

/// Every bipartite graph on at most max_vertices vertices: the group from
/// every reduced Laplacian matches the determinantal-divisor oracle.
CheckResult check_vertex_drop_independence(std::size_t max_vertices = 7);

/// Relative error of the Gaussian local estimate at s = floor(n/2) shrinks
/// along n = 100, 1000, 10000 and stays below 10 / sqrt(n).
CheckResult check_dml_convergence();

/// Exact full-rank probability of uniform matrices dominates the min-entropy
/// bound for 1 <= n <= m <= 20, p in {2, 3, 5}.
CheckResult check_min_entropy_bound();

/// Direct and Schur coranks of M agree on every instance (p = 2, n = 40, alpha = 1/4).
CheckResult check_pipeline_consistency(std::size_t instances, std::uint64_t seed);

std::vector<CheckResult> run_all(std::uint64_t seed = kDefaultSeed);

} // namespace sandrank::verify
