#include "sandrank/bigraph.hpp"

#include "sandrank/errors.hpp"
#include "sandrank/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sandrank::graph {

std::size_t side_size(std::size_t n, double alpha) {
    const double product = alpha * static_cast<double>(n);
    const double nearest = std::round(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, std::abs(product)))
        return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::floor(product));
}

void GraphModelParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw InvalidParams("alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(q > 0.0 && q < 1.0)) throw InvalidParams("q must lie in (0, 1), got " + std::to_string(q));
    if (n_right() < 1) throw InvalidParams("floor(alpha * n) must be at least 1");
}

BipartiteGraph::BipartiteGraph(std::size_t n_left, std::size_t n_right)
    : n_left_(n_left), n_right_(n_right), bits_(n_left * n_right, 0) {}

BipartiteGraph BipartiteGraph::from_edges(std::size_t n_left, std::size_t n_right,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    BipartiteGraph g(n_left, n_right);
    for (auto [l, r] : edges) g.set_edge(l, r, true);
    return g;
}

BipartiteGraph BipartiteGraph::complete(std::size_t n_left, std::size_t n_right) {
    BipartiteGraph g(n_left, n_right);
    std::fill(g.bits_.begin(), g.bits_.end(), std::uint8_t{1});
    return g;
}

void BipartiteGraph::set_edge(std::size_t left, std::size_t right, bool present) {
    if (left >= n_left_ || right >= n_right_)
        throw IndexOutOfRange("edge (" + std::to_string(left) + ", " + std::to_string(right) +
                              ") outside " + std::to_string(n_left_) + "+" + std::to_string(n_right_));
    bits_[left * n_right_ + right] = present ? 1 : 0;
}

std::size_t BipartiteGraph::edge_count() const {
    return static_cast<std::size_t>(std::accumulate(bits_.begin(), bits_.end(), std::size_t{0}));
}

std::vector<std::pair<std::size_t, std::size_t>> BipartiteGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t l = 0; l < n_left_; ++l)
        for (std::size_t r = 0; r < n_right_; ++r)
            if (has_edge(l, r)) out.emplace_back(l, r);
    return out;
}

std::size_t BipartiteGraph::degree(std::size_t vertex) const {
    if (vertex >= vertex_count()) throw IndexOutOfRange("vertex " + std::to_string(vertex));
    std::size_t d = 0;
    if (vertex < n_left_) {
        for (std::size_t r = 0; r < n_right_; ++r) d += bits_[vertex * n_right_ + r];
    } else {
        const std::size_t r = vertex - n_left_;
        for (std::size_t l = 0; l < n_left_; ++l) d += bits_[l * n_right_ + r];
    }
    return d;
}

BipartiteGraph BipartiteGraph::induced(const std::vector<std::size_t>& keep_left,
                                       const std::vector<std::size_t>& keep_right) const {
    BipartiteGraph out(keep_left.size(), keep_right.size());
    for (std::size_t i = 0; i < keep_left.size(); ++i)
        for (std::size_t j = 0; j < keep_right.size(); ++j) {
            if (keep_left[i] >= n_left_ || keep_right[j] >= n_right_)
                throw IndexOutOfRange("induced subgraph index outside graph");
            out.bits_[i * out.n_right_ + j] = bits_[keep_left[i] * n_right_ + keep_right[j]];
        }
    return out;
}

BipartiteGraph sample_bipartite(const GraphModelParams& params) {
    RandomStream stream(params.seed);
    return sample_bipartite(params, stream);
}

BipartiteGraph sample_bipartite(const GraphModelParams& params, RandomStream& stream) {
    params.validate();
    BipartiteGraph g(params.n, params.n_right());
    for (std::size_t l = 0; l < g.n_left(); ++l)
        for (std::size_t r = 0; r < g.n_right(); ++r)
            if (stream.bernoulli(params.q)) g.set_edge(l, r, true);
    return g;
}

IntegerMatrix laplacian(const BipartiteGraph& g) {
    const std::size_t nl = g.n_left();
    IntegerMatrix lap(g.vertex_count(), g.vertex_count());
    for (std::size_t l = 0; l < nl; ++l)
        for (std::size_t r = 0; r < g.n_right(); ++r) {
            if (!g.has_edge(l, r)) continue;
            const std::size_t u = nl + r;
            lap(l, u) = -1;
            lap(u, l) = -1;
            lap(l, l) += 1;
            lap(u, u) += 1;
        }
    return lap;
}

gfp::PrimeFieldMatrix laplacian_mod_p(const BipartiteGraph& g, gfp::Residue p) {
    const std::size_t n = g.vertex_count();
    const std::size_t nl = g.n_left();
    std::vector<std::int64_t> values(n * n, 0);
    for (std::size_t l = 0; l < nl; ++l)
        for (std::size_t r = 0; r < g.n_right(); ++r) {
            if (!g.has_edge(l, r)) continue;
            const std::size_t u = nl + r;
            values[l * n + u] = -1;
            values[u * n + l] = -1;
            ++values[l * n + l];
            ++values[u * n + u];
        }
    return gfp::PrimeFieldMatrix::from_integers(p, n, n, values);
}

IntegerMatrix reduced_laplacian(const BipartiteGraph& g, std::size_t drop) {
    if (drop >= g.vertex_count())
        throw IndexOutOfRange("drop vertex " + std::to_string(drop) + " outside graph of " +
                              std::to_string(g.vertex_count()) + " vertices");
    return laplacian(g).without_row_col(drop);
}

std::vector<std::vector<std::size_t>> connected_components(const BipartiteGraph& g) {
    const std::size_t n = g.vertex_count();
    const std::size_t nl = g.n_left();
    std::vector<std::size_t> label(n, n);
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != n) continue;
        const std::size_t id = comps.size();
        comps.emplace_back();
        label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            comps[id].push_back(v);
            auto visit = [&](std::size_t u) {
                if (label[u] == n) {
                    label[u] = id;
                    stack.push_back(u);
                }
            };
            if (v < nl) {
                for (std::size_t r = 0; r < g.n_right(); ++r)
                    if (g.has_edge(v, r)) visit(nl + r);
            } else {
                for (std::size_t l = 0; l < nl; ++l)
                    if (g.has_edge(l, v - nl)) visit(l);
            }
        }
        std::sort(comps[id].begin(), comps[id].end());
    }
    return comps;
}

} // namespace sandrank::graph
