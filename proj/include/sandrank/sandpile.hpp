#pragma once

// Sandpile (critical) groups of bipartite graphs. For a connected graph the
// group is the cokernel of any reduced Laplacian; a disconnected graph gets
// the direct sum over its components.

#include "sandrank/bigraph.hpp"
#include "sandrank/integer_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sandrank::sandpile {

/// Finitely generated abelian group Z^free_rank + Z/d1 + ... + Z/dk with
/// 2 <= d1 | d2 | ... | dk. `order` is the product of the finite factors.
struct GroupInvariants {
    std::vector<BigInt> factors;
    BigInt order = 1;
    std::size_t free_rank = 0;

    bool is_trivial() const { return factors.empty() && free_rank == 0; }
    friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

/// Diagonal d1, ..., d_min(r,c) of the Smith normal form, non-negative and
/// with d_i | d_{i+1}.
///
/// Pivots are the smallest nonzero entry in absolute value, ties broken by
/// (row, col). A square nonsingular input is first run through Bareiss to get
/// D = |det|, and elimination then proceeds on residues mod D. The cokernel is
/// annihilated by D, so this yields the same diagonal while keeping every
/// intermediate below D.
std::vector<BigInt> smith_normal_form(const IntegerMatrix& m);

/// Canonical form of a direct sum of cyclic groups Z/a_i (a_i = 0 meaning Z).
std::vector<BigInt> normalize_invariant_factors(std::vector<BigInt> diag);

/// Invariants of Z^rows / m Z^cols.
GroupInvariants cokernel(const IntegerMatrix& m);

/// Reduced Laplacian of one connected component, dropping the component's
/// vertex at position `drop_position` (default: its last vertex).
IntegerMatrix component_reduced_laplacian(const graph::BipartiteGraph& g,
                                          const std::vector<std::size_t>& component,
                                          std::size_t drop_position);

GroupInvariants sandpile_group(const graph::BipartiteGraph& g);

/// Number of invariant factors divisible by p, computed over GF(p) as
/// corank(Laplacian mod p) - #components. Throws NotPrime.
std::size_t p_rank(const graph::BipartiteGraph& g, std::uint64_t p);

/// Number of invariant factors divisible by p (free summands count too).
std::size_t p_rank(const GroupInvariants& group, std::uint64_t p);

bool is_cyclic(const graph::BipartiteGraph& g);
bool is_cyclic(const GroupInvariants& group);

/// Determinant of a reduced Laplacian. Throws Disconnected.
BigInt spanning_tree_count(const graph::BipartiteGraph& g);

} // namespace sandrank::sandpile
