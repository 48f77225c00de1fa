#include "sandrank/oracles.hpp"

#include "sandrank/errors.hpp"

#include <numeric>
#include <set>

namespace sandrank::oracle {

BigInt cofactor_determinant(const IntegerMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n > 20) throw InvalidParams("cofactor expansion limited to 20x20");
    // minors[mask] = det of the submatrix on the last popcount(mask) rows and
    // the columns in mask, expanded along its first row.
    std::vector<BigInt> minors(std::size_t{1} << n);
    minors[0] = 1;
    for (std::size_t mask = 1; mask < minors.size(); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
        const std::size_t row = n - size;
        BigInt acc = 0;
        int sign = 1;
        for (std::size_t col = 0; col < n; ++col) {
            if (!(mask & (std::size_t{1} << col))) continue;
            if (m(row, col) != 0) {
                BigInt term = m(row, col) * minors[mask & ~(std::size_t{1} << col)];
                if (sign > 0)
                    acc += term;
                else
                    acc -= term;
            }
            sign = -sign;
        }
        minors[mask] = acc;
    }
    return minors.back();
}

namespace {

void choose(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    if (k > n) return;
    for (;;) {
        out.push_back(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace

std::vector<BigInt> smith_by_minors(const IntegerMatrix& m) {
    const std::size_t r = std::min(m.rows(), m.cols());
    std::vector<BigInt> out;
    BigInt previous = 1;
    for (std::size_t k = 1; k <= r; ++k) {
        std::vector<std::vector<std::size_t>> rows, cols;
        choose(m.rows(), k, rows);
        choose(m.cols(), k, cols);
        BigInt g = 0;
        for (const auto& rs : rows)
            for (const auto& cs : cols) {
                IntegerMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
                const BigInt d = cofactor_determinant(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0) {
            // Every larger minor vanishes too.
            out.resize(r, 0);
            return out;
        }
        out.push_back(g / previous);
        previous = g;
    }
    return out;
}

std::uint64_t count_spanning_trees(const graph::BipartiteGraph& g) {
    const auto edges = g.edges();
    const std::size_t v = g.vertex_count();
    if (v <= 1) return 1;
    const std::size_t need = v - 1;
    if (edges.size() < need) return 0;
    std::vector<std::vector<std::size_t>> subsets;
    choose(edges.size(), need, subsets);
    std::uint64_t count = 0;
    std::vector<std::size_t> parent(v);
    for (const auto& subset : subsets) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        bool acyclic = true;
        for (std::size_t e : subset) {
            const std::size_t a = find(edges[e].first);
            const std::size_t b = find(g.n_left() + edges[e].second);
            if (a == b) {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if (acyclic) ++count;
    }
    return count;
}

std::size_t rank_by_span(const gfp::PrimeFieldMatrix& m) {
    const std::uint64_t p = m.modulus();
    const std::size_t rows = m.rows();
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < rows; ++i) {
        combos *= p;
        if (combos > (std::uint64_t{1} << 22)) throw InvalidParams("span enumeration too large");
    }
    std::set<std::vector<gfp::Residue>> span;
    std::vector<std::uint64_t> coeff(rows, 0);
    for (std::uint64_t c = 0; c < combos; ++c) {
        std::uint64_t x = c;
        for (std::size_t i = 0; i < rows; ++i) {
            coeff[i] = x % p;
            x /= p;
        }
        std::vector<gfp::Residue> v(m.cols(), 0);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::uint64_t s = 0;
            for (std::size_t i = 0; i < rows; ++i) s = (s + coeff[i] * m(i, j)) % p;
            v[j] = static_cast<gfp::Residue>(s);
        }
        span.insert(std::move(v));
    }
    std::size_t rank = 0;
    for (std::size_t size = span.size(); size > 1; size /= p) ++rank;
    return rank;
}

theory::Rational full_rank_fraction_by_enumeration(std::size_t n, std::size_t m, std::uint64_t p) {
    const std::size_t cells = n * m;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= p;
        if (total > (std::uint64_t{1} << 20)) throw InvalidParams("enumeration too large");
    }
    std::uint64_t full = 0;
    std::vector<std::int64_t> values(cells);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (auto& v : values) {
            v = static_cast<std::int64_t>(x % p);
            x /= p;
        }
        const auto mat = gfp::PrimeFieldMatrix::from_integers(static_cast<gfp::Residue>(p), n, m, values);
        if (rank_by_span(mat) == n) ++full;
    }
    theory::Rational out(mpz_class(static_cast<unsigned long>(full)), mpz_class(static_cast<unsigned long>(total)));
    out.canonicalize();
    return out;
}

theory::Rational conditional_mean_by_summation(std::size_t n, const theory::Rational& alpha, std::int64_t s) {
    theory::Rational weighted = 0, mass = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (static_cast<std::int64_t>(k) <= s) continue;
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), n, k);
        theory::Rational term = c;
        for (std::size_t i = 0; i < k; ++i) term *= alpha;
        for (std::size_t i = k; i < n; ++i) term *= (1 - alpha);
        mass += term;
        weighted += term * static_cast<unsigned long>(k);
    }
    if (mass == 0) throw EmptyConditioningEvent("empty conditioning event");
    theory::Rational out = weighted / mass;
    out.canonicalize();
    return out;
}

std::vector<graph::BipartiteGraph> all_bipartite_graphs(std::size_t n_left, std::size_t n_right) {
    const std::size_t cells = n_left * n_right;
    if (cells > 20) throw InvalidParams("too many graphs to enumerate");
    std::vector<graph::BipartiteGraph> out;
    out.reserve(std::size_t{1} << cells);
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
        graph::BipartiteGraph g(n_left, n_right);
        for (std::size_t c = 0; c < cells; ++c)
            if (mask & (std::size_t{1} << c)) g.set_edge(c / n_right, c % n_right, true);
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace sandrank::oracle
