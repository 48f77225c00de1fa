#pragma once

// Dense linear algebra over the prime field Z/pZ.
//
// Matrices are immutable values: every operation returns a new matrix and
// never touches its arguments, so they can be shared freely across threads.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sandrank::gfp {

using Residue = std::uint32_t;

/// Largest admissible modulus is below 2^31 so a product of two residues fits in 64 bits.
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 31;

/// Deterministic primality test (exact for all 64-bit inputs).
bool is_prime(std::uint64_t n);

/// Strictly increasing list of positions into a dimension of size `bound`.
class IndexSet {
public:
    IndexSet(std::vector<std::size_t> indices, std::size_t bound);

    static IndexSet all(std::size_t bound);
    static IndexSet none(std::size_t bound);
    /// Positions [first, last).
    static IndexSet range(std::size_t first, std::size_t last, std::size_t bound);

    /// Positions in [0, bound) not in this set, in increasing order.
    IndexSet complement() const;

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    std::size_t bound() const noexcept { return bound_; }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<std::size_t> indices_;
    std::size_t bound_ = 0;
};

class PrimeFieldMatrix {
public:
    /// rows x cols zero matrix. Throws NotPrime unless p is a prime below 2^31.
    PrimeFieldMatrix(Residue p, std::size_t rows, std::size_t cols);

    /// Row-major residues, each required to lie in [0, p).
    PrimeFieldMatrix(Residue p, std::size_t rows, std::size_t cols, std::vector<Residue> entries);

    /// Arbitrary signed integers, reduced into [0, p).
    static PrimeFieldMatrix from_integers(Residue p, std::size_t rows, std::size_t cols,
                                          std::span<const std::int64_t> values);
    static PrimeFieldMatrix from_rows(Residue p,
                                      std::initializer_list<std::initializer_list<std::int64_t>> rows);
    static PrimeFieldMatrix identity(Residue p, std::size_t n);

    Residue modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const Residue> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const Residue> entries() const noexcept { return data_; }

    PrimeFieldMatrix transpose() const;
    bool is_symmetric() const;

    /// Space-separated residues, one line per row.
    std::string to_string() const;

    friend bool operator==(const PrimeFieldMatrix&, const PrimeFieldMatrix&) = default;

private:
    Residue p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

std::ostream& operator<<(std::ostream& os, const PrimeFieldMatrix& m);

PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
PrimeFieldMatrix operator-(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);

/// Dimension of the row space over Z/pZ. Uses a bit-packed path when p = 2.
std::size_t rank_mod_p(const PrimeFieldMatrix& m);

/// min(rows, cols) - rank.
std::size_t corank_mod_p(const PrimeFieldMatrix& m);

/// Entry (i, j) of the result is m(rows[i], cols[j]).
PrimeFieldMatrix submatrix(const PrimeFieldMatrix& m, const IndexSet& rows, const IndexSet& cols);

/// Inverse of a square matrix; throws SingularBlock when it does not exist.
PrimeFieldMatrix inverse(const PrimeFieldMatrix& m);

/// A/S = A[T,T] - A[T,S] * A[S,S]^-1 * A[S,T], with T the complement of S.
/// Its corank equals the corank of `m`.
PrimeFieldMatrix schur_complement(const PrimeFieldMatrix& m, const IndexSet& s);

Residue inverse_mod(Residue a, Residue p);

namespace detail {

// Both rank paths are exposed so they can be checked against each other.
std::size_t rank_generic(const PrimeFieldMatrix& m);
std::size_t rank_gf2_packed(const PrimeFieldMatrix& m);

/// Gauss-Jordan elimination in place over a row-major buffer. Pivots are
/// searched only among the first `pivot_cols` columns, column by column from
/// the left, taking the first row with a nonzero entry. When `reduced` is set
/// the result is in reduced row echelon form with unit pivots; otherwise only
/// the entries below each pivot are cleared. Returns the number of pivots.
std::size_t eliminate(std::vector<Residue>& a, std::size_t rows, std::size_t cols,
                      std::size_t pivot_cols, Residue p, bool reduced);

} // namespace detail

} // namespace sandrank::gfp
