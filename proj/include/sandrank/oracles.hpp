#pragma once

// Brute-force reference computations. They share no code with the library's
// elimination routines and are only practical on tiny inputs; they exist to
// check the fast paths.

#include "sandrank/bigraph.hpp"
#include "sandrank/integer_matrix.hpp"
#include "sandrank/prime_field_matrix.hpp"
#include "sandrank/theory.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sandrank::oracle {

/// Determinant by cofactor expansion over column subsets (O(n 2^n)), n <= 20.
BigInt cofactor_determinant(const IntegerMatrix& m);

/// Smith diagonal from determinantal divisors: s_k = g_k / g_(k-1) where g_k
/// is the gcd of all k x k minors.
std::vector<BigInt> smith_by_minors(const IntegerMatrix& m);

/// Spanning trees counted by testing every (V-1)-edge subset for acyclicity.
std::uint64_t count_spanning_trees(const graph::BipartiteGraph& g);

/// Rank over GF(p) as log_p of the size of the row span, found by enumerating
/// every combination of rows. Needs p^rows to be small.
std::size_t rank_by_span(const gfp::PrimeFieldMatrix& m);

/// Fraction of all p^(n m) matrices of shape n x m over GF(p) with rank n,
/// counted exhaustively.
theory::Rational full_rank_fraction_by_enumeration(std::size_t n, std::size_t m, std::uint64_t p);

/// sum_{k>s} k P(B=k) / sum_{k>s} P(B=k), each term C(n,k) a^k (1-a)^(n-k).
theory::Rational conditional_mean_by_summation(std::size_t n, const theory::Rational& alpha, std::int64_t s);

/// Every bipartite graph with the given side sizes (one per biadjacency mask).
std::vector<graph::BipartiteGraph> all_bipartite_graphs(std::size_t n_left, std::size_t n_right);

} // namespace sandrank::oracle
