#pragma once

// The random bipartite graph G(n, alpha, q): a left side L of n vertices, a
// right side R of floor(alpha * n) vertices, and each of the n * |R| possible
// L-R edges present independently with probability q.
//
// Vertex numbering is global and fixed: L occupies 0 .. n_left-1 and R
// occupies n_left .. n_left+n_right-1.

#include "sandrank/integer_matrix.hpp"
#include "sandrank/prime_field_matrix.hpp"
#include "sandrank/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace sandrank::graph {

/// floor(alpha * n), tolerant of binary rounding just below an integer
/// (e.g. 0.3 * 10 evaluating to 2.9999999999999996).
std::size_t side_size(std::size_t n, double alpha);

struct GraphModelParams {
    std::size_t n = 0;
    double alpha = 0.5;
    double q = 0.5;
    std::uint64_t seed = 0;

    std::size_t n_right() const { return side_size(n, alpha); }
    /// Throws InvalidParams unless 0 < alpha <= 1, 0 < q < 1 and floor(alpha n) >= 1.
    void validate() const;
};

class BipartiteGraph {
public:
    BipartiteGraph(std::size_t n_left, std::size_t n_right);
    /// Edges as (left index, right index) pairs, both 0-based within their side.
    static BipartiteGraph from_edges(std::size_t n_left, std::size_t n_right,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges);
    static BipartiteGraph complete(std::size_t n_left, std::size_t n_right);

    std::size_t n_left() const noexcept { return n_left_; }
    std::size_t n_right() const noexcept { return n_right_; }
    std::size_t vertex_count() const noexcept { return n_left_ + n_right_; }

    bool has_edge(std::size_t left, std::size_t right) const { return bits_[left * n_right_ + right] != 0; }
    void set_edge(std::size_t left, std::size_t right, bool present);

    std::size_t edge_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    /// Degree of a vertex in global numbering.
    std::size_t degree(std::size_t vertex) const;

    /// Induced subgraph on the listed left and right vertices (side-local indices).
    BipartiteGraph induced(const std::vector<std::size_t>& keep_left,
                           const std::vector<std::size_t>& keep_right) const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    std::size_t n_left_ = 0;
    std::size_t n_right_ = 0;
    std::vector<std::uint8_t> bits_; // biadjacency, row-major over (left, right)
};

/// One Bernoulli(q) draw per potential edge, row-major over the biadjacency,
/// from a stream seeded with params.seed.
BipartiteGraph sample_bipartite(const GraphModelParams& params);

/// Same draws, taken from a caller-owned stream (params.seed is ignored), so
/// further values can be drawn after the edges.
BipartiteGraph sample_bipartite(const GraphModelParams& params, RandomStream& stream);

/// D - A in global vertex order.
IntegerMatrix laplacian(const BipartiteGraph& g);

/// The Laplacian reduced mod p.
gfp::PrimeFieldMatrix laplacian_mod_p(const BipartiteGraph& g, gfp::Residue p);

/// Laplacian with row and column `drop` removed.
IntegerMatrix reduced_laplacian(const BipartiteGraph& g, std::size_t drop);

/// Maximal connected vertex sets (global numbering), each sorted, ordered by
/// smallest member. Isolated vertices form singletons.
std::vector<std::vector<std::size_t>> connected_components(const BipartiteGraph& g);

} // namespace sandrank::graph
