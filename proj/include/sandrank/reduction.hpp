#pragma once

// Reduction of the p-rank question to the corank of a structured matrix over
// GF(p).
//
//   Delta1  the Laplacian mod p with its first p and last p rows and columns
//           removed (with the global L-then-R order: p left vertices and p
//           right vertices disappear).
//   M       Delta1 of a G(n + 2p, alpha, q) sample whose diagonal is then
//           overwritten with independent uniform residues.
//
// Both have the block shape (D1 -A; -A^T D2) with D1, D2 diagonal.

#include "sandrank/bigraph.hpp"
#include "sandrank/prime_field_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sandrank::reduction {

enum class Construction { delta1, m };
std::string to_string(Construction c);

struct ReducedModelMatrix {
    gfp::PrimeFieldMatrix matrix;
    /// Rows and columns [0, split) form the D1 block.
    std::size_t split = 0;
    /// floor(alpha n) of the target law: the cut a zero-diagonal count is compared against.
    std::size_t cut = 0;
    std::optional<graph::GraphModelParams> params;
    Construction construction = Construction::delta1;
};

/// Throws TooSmall unless both sides have more than 2p vertices.
ReducedModelMatrix build_delta1(const graph::BipartiteGraph& g, gfp::Residue p);

/// Edges are drawn first from the stream seeded by `seed`, then one uniform
/// residue per diagonal position, top to bottom, from the same stream. Hence
/// the off-diagonal part equals build_delta1 of the same seed exactly.
ReducedModelMatrix build_M(std::size_t n, double alpha, double q, gfp::Residue p, std::uint64_t seed);

struct PipelineReport {
    std::size_t corank_direct = 0;
    /// Corank of the Schur complement M / D1'; empty if D1' was singular.
    std::optional<std::size_t> corank_schur;
    /// Zero diagonal entries in D1.
    std::size_t r = 0;
    std::size_t cut = 0;
    std::size_t d1_size = 0;
    std::size_t d2_size = 0;
    /// "r >= floor(alpha n)" or "r < floor(alpha n)".
    std::string regime;
};

/// corank(M) computed directly and through the Schur complement with respect
/// to D1', the sub-block of D1 carrying the nonzero diagonal entries.
PipelineReport corank_pipeline(const ReducedModelMatrix& m);

enum class DiagonalBlock { left, right };

struct UniformityStat {
    double chi_square = 0.0;
    double p_value = 1.0;
    std::size_t degrees_of_freedom = 0;
    std::size_t samples = 0;
    std::vector<std::size_t> counts;
};

/// Pearson goodness-of-fit of the Delta1 diagonal entries of one block against
/// the uniform law on Z/pZ, pooling every entry of that block over `trials`
/// independent G(n, alpha, q) samples (trial t uses derive_seed(seed, t)).
/// Throws InvalidParams if trials < 100.
UniformityStat diag_uniformity_stat(std::size_t n, double alpha, double q, gfp::Residue p,
                                    std::size_t trials, std::uint64_t seed,
                                    DiagonalBlock block = DiagonalBlock::left);

} // namespace sandrank::reduction
