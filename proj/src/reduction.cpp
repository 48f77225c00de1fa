#include "sandrank/reduction.hpp"

#include "sandrank/errors.hpp"
#include "sandrank/rng.hpp"

#include <boost/math/distributions/chi_squared.hpp>

namespace sandrank::reduction {

std::string to_string(Construction c) { return c == Construction::delta1 ? "delta1" : "M"; }

ReducedModelMatrix build_delta1(const graph::BipartiteGraph& g, gfp::Residue p) {
    if (!gfp::is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (g.n_left() <= 2 * std::size_t{p} || g.n_right() <= 2 * std::size_t{p})
        throw TooSmall("Delta1 needs more than 2p vertices on each side, got " +
                       std::to_string(g.n_left()) + "+" + std::to_string(g.n_right()));
    const std::size_t nl = g.n_left();
    const std::size_t total = g.vertex_count();
    const std::size_t first = p;          // drop vertices [0, p)
    const std::size_t last = total - p;   // and [total - p, total)
    const std::size_t dim = last - first;

    std::vector<std::int64_t> values(dim * dim, 0);
    for (std::size_t a = 0; a < dim; ++a) {
        const std::size_t u = first + a;
        values[a * dim + a] = static_cast<std::int64_t>(g.degree(u));
        if (u >= nl) continue;
        for (std::size_t b = nl - first; b < dim; ++b) {
            const std::size_t v = first + b;
            if (g.has_edge(u, v - nl)) {
                values[a * dim + b] = -1;
                values[b * dim + a] = -1;
            }
        }
    }
    ReducedModelMatrix out{gfp::PrimeFieldMatrix::from_integers(p, dim, dim, values), nl - first,
                           g.n_right(), std::nullopt, Construction::delta1};
    return out;
}

ReducedModelMatrix build_M(std::size_t n, double alpha, double q, gfp::Residue p, std::uint64_t seed) {
    const graph::GraphModelParams params{n + 2 * std::size_t{p}, alpha, q, seed};
    RandomStream stream(seed);
    const auto g = graph::sample_bipartite(params, stream);
    ReducedModelMatrix delta = build_delta1(g, p);

    const std::size_t dim = delta.matrix.rows();
    std::vector<gfp::Residue> entries(delta.matrix.entries().begin(), delta.matrix.entries().end());
    for (std::size_t i = 0; i < dim; ++i)
        entries[i * dim + i] = static_cast<gfp::Residue>(stream.uniform_below(p));

    return ReducedModelMatrix{gfp::PrimeFieldMatrix(p, dim, dim, std::move(entries)), delta.split,
                              graph::side_size(n, alpha), params, Construction::m};
}

PipelineReport corank_pipeline(const ReducedModelMatrix& m) {
    const auto& a = m.matrix;
    PipelineReport report;
    report.corank_direct = gfp::corank_mod_p(a);
    report.d1_size = m.split;
    report.d2_size = a.rows() - m.split;
    report.cut = m.cut;

    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < m.split; ++i) {
        if (a(i, i) == 0)
            ++report.r;
        else
            nonzero.push_back(i);
    }
    report.regime = report.r >= m.cut ? "r >= floor(alpha n)" : "r < floor(alpha n)";

    // D1' is diagonal with nonzero entries, so this only fails if D1 was not diagonal.
    try {
        const auto reduced = gfp::schur_complement(a, gfp::IndexSet(std::move(nonzero), a.rows()));
        report.corank_schur = gfp::corank_mod_p(reduced);
    } catch (const SingularBlock&) {
        report.corank_schur.reset();
    }
    return report;
}

UniformityStat diag_uniformity_stat(std::size_t n, double alpha, double q, gfp::Residue p,
                                    std::size_t trials, std::uint64_t seed, DiagonalBlock block) {
    if (trials < 100) throw InvalidParams("uniformity statistic needs at least 100 trials");
    UniformityStat stat;
    stat.counts.assign(p, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto g = graph::sample_bipartite({n, alpha, q, derive_seed(seed, t)});
        const auto delta = build_delta1(g, p);
        const std::size_t lo = block == DiagonalBlock::left ? 0 : delta.split;
        const std::size_t hi = block == DiagonalBlock::left ? delta.split : delta.matrix.rows();
        for (std::size_t i = lo; i < hi; ++i) ++stat.counts[delta.matrix(i, i)];
        stat.samples += hi - lo;
    }
    const double expected = static_cast<double>(stat.samples) / static_cast<double>(p);
    for (std::size_t c : stat.counts) {
        const double diff = static_cast<double>(c) - expected;
        stat.chi_square += diff * diff / expected;
    }
    stat.degrees_of_freedom = p - 1;
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(stat.degrees_of_freedom));
    stat.p_value = boost::math::cdf(boost::math::complement(dist, stat.chi_square));
    return stat;
}

} // namespace sandrank::reduction
