#include "doctest.h"

#include "sandrank/errors.hpp"
#include "sandrank/oracles.hpp"
#include "sandrank/prime_field_matrix.hpp"
#include "sandrank/rng.hpp"
#include "sandrank/theory.hpp"

#include <algorithm>
#include <cmath>

using namespace sandrank;
using gfp::IndexSet;
using gfp::PrimeFieldMatrix;

namespace {

PrimeFieldMatrix random_matrix(RandomStream& rng, gfp::Residue p, std::size_t r, std::size_t c) {
    std::vector<gfp::Residue> v(r * c);
    for (auto& x : v) x = static_cast<gfp::Residue>(rng.uniform_below(p));
    return PrimeFieldMatrix(p, r, c, std::move(v));
}

} // namespace

TEST_CASE("construction validates modulus and entries") {
    CHECK_THROWS_AS(PrimeFieldMatrix(4, 2, 2), NotPrime);
    CHECK_THROWS_AS(PrimeFieldMatrix(1, 2, 2), NotPrime);
    CHECK_THROWS_AS(PrimeFieldMatrix(2, 1, 2, {0, 2}), InvalidParams);
    CHECK_THROWS_AS(PrimeFieldMatrix(2, 1, 2, {0}), DimensionMismatch);
    const std::vector<std::int64_t> vals{-1, 7, 12, -10};
    const auto m = PrimeFieldMatrix::from_integers(5, 2, 2, vals);
    CHECK(m(0, 0) == 4);
    CHECK(m(0, 1) == 2);
    CHECK(m(1, 0) == 2);
    CHECK(m(1, 1) == 0);
    CHECK(gfp::is_prime(2147483647));
    CHECK_FALSE(gfp::is_prime(561));
}

TEST_CASE("index sets") {
    CHECK_THROWS(IndexSet({1, 1}, 3));
    CHECK_THROWS(IndexSet({2, 1}, 3));
    CHECK_THROWS(IndexSet({3}, 3));
    const IndexSet s({0, 2}, 4);
    CHECK(s.complement().indices() == std::vector<std::size_t>{1, 3});
    CHECK(IndexSet::all(3).complement().empty());
    CHECK(IndexSet::range(1, 3, 4).indices() == std::vector<std::size_t>{1, 2});
}

TEST_CASE("rank and corank examples") {
    CHECK(gfp::rank_mod_p(PrimeFieldMatrix::identity(2, 3)) == 3);
    CHECK(gfp::rank_mod_p(PrimeFieldMatrix(5, 4, 7)) == 0);
    const auto ones = PrimeFieldMatrix::from_rows(2, {{1, 1}, {1, 1}});
    CHECK(gfp::rank_mod_p(ones) == 1);
    CHECK(gfp::corank_mod_p(PrimeFieldMatrix::identity(3, 3)) == 0);
    CHECK(gfp::corank_mod_p(PrimeFieldMatrix(2, 2, 5)) == 2);
    CHECK(gfp::corank_mod_p(ones) == 1);
    CHECK(gfp::rank_mod_p(PrimeFieldMatrix(3, 0, 4)) == 0);
}

TEST_CASE("rank does not mutate its input") {
    const auto m = PrimeFieldMatrix::from_rows(7, {{1, 2, 3}, {2, 4, 6}, {0, 1, 5}});
    const auto copy = m;
    (void)gfp::rank_mod_p(m);
    CHECK(m == copy);
}

TEST_CASE("rank agrees with span enumeration") {
    RandomStream rng(11);
    for (gfp::Residue p : {2u, 3u, 5u})
        for (int t = 0; t < 60; ++t) {
            const std::size_t r = 1 + rng.uniform_below(p == 2 ? 8 : 5);
            const std::size_t c = 1 + rng.uniform_below(8);
            const auto m = random_matrix(rng, p, r, c);
            CHECK(gfp::rank_mod_p(m) == oracle::rank_by_span(m));
        }
}

TEST_CASE("bit-packed GF(2) path matches the generic path") {
    RandomStream rng(12);
    for (int t = 0; t < 300; ++t) {
        const std::size_t r = rng.uniform_below(140);
        const std::size_t c = rng.uniform_below(140);
        // Low-rank products exercise dependent rows.
        const auto m = t % 2 ? random_matrix(rng, 2, r, c)
                             : random_matrix(rng, 2, r, 5) * random_matrix(rng, 2, 5, c);
        CHECK(gfp::detail::rank_gf2_packed(m) == gfp::detail::rank_generic(m));
    }
}

TEST_CASE("rank invariances") {
    RandomStream rng(13);
    for (gfp::Residue p : {2u, 3u, 7u, 101u})
        for (int t = 0; t < 50; ++t) {
            const std::size_t r = 1 + rng.uniform_below(9), c = 1 + rng.uniform_below(9);
            const std::size_t k = rng.uniform_below(std::min(r, c) + 1);
            const auto m = k == 0 ? PrimeFieldMatrix(p, r, c) : random_matrix(rng, p, r, k) * random_matrix(rng, p, k, c);
            const std::size_t rank = gfp::rank_mod_p(m);
            CHECK(rank <= k);
            CHECK(gfp::rank_mod_p(m.transpose()) == rank);

            std::vector<std::size_t> perm(r);
            for (std::size_t i = 0; i < r; ++i) perm[i] = i;
            for (std::size_t i = r; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
            std::vector<gfp::Residue> shuffled;
            for (std::size_t i = 0; i < r; ++i) {
                const gfp::Residue scale = static_cast<gfp::Residue>(1 + rng.uniform_below(p - 1));
                for (std::size_t j = 0; j < c; ++j)
                    shuffled.push_back(static_cast<gfp::Residue>(std::uint64_t{m(perm[i], j)} * scale % p));
            }
            CHECK(gfp::rank_mod_p(PrimeFieldMatrix(p, r, c, shuffled)) == rank);
        }
}

TEST_CASE("submatrix") {
    const auto m = PrimeFieldMatrix::from_rows(5, {{0, 1, 2}, {3, 4, 0}, {1, 2, 3}});
    CHECK(gfp::submatrix(m, IndexSet::all(3), IndexSet::all(3)) == m);
    const auto empty = gfp::submatrix(m, IndexSet::none(3), IndexSet::all(3));
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 3);
    const auto col = gfp::submatrix(m, IndexSet({0, 2}, 3), IndexSet({1}, 3));
    CHECK(col == PrimeFieldMatrix::from_rows(5, {{1}, {2}}));
    CHECK_THROWS_AS(gfp::submatrix(m, IndexSet({0}, 4), IndexSet::all(3)), DimensionMismatch);
}

TEST_CASE("inverse") {
    const auto a = PrimeFieldMatrix::from_rows(7, {{2, 1}, {5, 3}});
    CHECK(a * gfp::inverse(a) == PrimeFieldMatrix::identity(7, 2));
    CHECK_THROWS_AS(gfp::inverse(PrimeFieldMatrix::from_rows(5, {{2, 1}, {4, 2}})), SingularBlock);
    CHECK(gfp::inverse_mod(3, 7) == 5);
}

TEST_CASE("Schur complement examples") {
    CHECK(gfp::schur_complement(PrimeFieldMatrix::identity(3, 2), IndexSet({0}, 2)) ==
          PrimeFieldMatrix::from_rows(3, {{1}}));
    const auto a = PrimeFieldMatrix::from_rows(5, {{2, 1}, {3, 4}});
    CHECK(gfp::schur_complement(a, IndexSet({0}, 2)) == PrimeFieldMatrix::from_rows(5, {{0}}));
    CHECK(gfp::corank_mod_p(a) == 1);
    CHECK_THROWS_AS(gfp::schur_complement(PrimeFieldMatrix::from_rows(5, {{0, 1}, {1, 0}}), IndexSet({0}, 2)),
                    SingularBlock);
    CHECK_THROWS_AS(gfp::schur_complement(a, IndexSet({0}, 3)), DimensionMismatch);
    // Empty S leaves the matrix alone; S = everything leaves a 0 x 0 result.
    CHECK(gfp::schur_complement(a, IndexSet::none(2)) == a);
    const auto b = PrimeFieldMatrix::from_rows(5, {{2, 1}, {1, 1}});
    CHECK(gfp::schur_complement(b, IndexSet::all(2)).rows() == 0);
}

TEST_CASE("Schur complement preserves corank on 6x6 matrices over GF(7)") {
    RandomStream rng(14);
    int done = 0;
    while (done < 200) {
        const std::size_t k = rng.uniform_below(7);
        const auto m = k == 0 ? PrimeFieldMatrix(7, 6, 6) : random_matrix(rng, 7, 6, k) * random_matrix(rng, 7, k, 6);
        const IndexSet lead = IndexSet::range(0, 3, 6);
        if (gfp::rank_mod_p(gfp::submatrix(m, lead, lead)) < 3) continue;
        ++done;
        const auto s = gfp::schur_complement(m, lead);
        CHECK(s.rows() == 3);
        CHECK(gfp::corank_mod_p(s) == gfp::corank_mod_p(m));
        // Independent oracle: row-span enumeration of both matrices.
        CHECK(3 - oracle::rank_by_span(s) == 6 - oracle::rank_by_span(m));
    }
}

TEST_CASE("full-rank frequency of uniform matrices respects the min-entropy bound") {
    RandomStream rng(15);
    for (auto [n, m, p] : {std::tuple<std::size_t, std::size_t, gfp::Residue>{3, 5, 2}, {4, 6, 3}, {5, 5, 5}}) {
        const std::size_t trials = 10000;
        std::size_t full = 0;
        for (std::size_t t = 0; t < trials; ++t) full += gfp::rank_mod_p(random_matrix(rng, p, n, m)) == n;
        const double freq = static_cast<double>(full) / trials;
        const double bound = theory::min_entropy_rank_bound(n, m, 1.0 - 1.0 / p);
        const double exact = theory::uniform_full_rank_probability(n, m, p).get_d();
        const double sigma = std::sqrt(exact * (1 - exact) / trials);
        CHECK(freq >= bound - 3 * sigma);
        CHECK(std::abs(freq - exact) <= 3 * sigma);
    }
}
