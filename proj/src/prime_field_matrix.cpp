#include "sandrank/prime_field_matrix.hpp"

#include "sandrank/errors.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>

namespace sandrank::gfp {

namespace {

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod64(result, base, m);
        base = mul_mod64(base, base, m);
        exp >>= 1U;
    }
    return result;
}

void check_modulus(Residue p) {
    if (p >= kModulusLimit || !is_prime(p))
        throw NotPrime("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // These witnesses are sufficient for every n < 2^64.
    for (std::uint64_t a : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U}) {
        std::uint64_t x = pow_mod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Residue inverse_mod(Residue a, Residue p) {
    if (a % p == 0) throw SingularBlock("zero has no inverse mod " + std::to_string(p));
    return static_cast<Residue>(pow_mod64(a, p - 2, p));
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t bound)
    : indices_(std::move(indices)), bound_(bound) {
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= bound_)
            throw IndexOutOfRange("index " + std::to_string(indices_[i]) + " outside bound " +
                                  std::to_string(bound_));
        if (i > 0 && indices_[i - 1] >= indices_[i])
            throw InvalidParams("index set must be strictly increasing");
    }
}

IndexSet IndexSet::all(std::size_t bound) { return range(0, bound, bound); }

IndexSet IndexSet::none(std::size_t bound) { return IndexSet({}, bound); }

IndexSet IndexSet::range(std::size_t first, std::size_t last, std::size_t bound) {
    std::vector<std::size_t> idx;
    for (std::size_t i = first; i < last; ++i) idx.push_back(i);
    return IndexSet(std::move(idx), bound);
}

IndexSet IndexSet::complement() const {
    std::vector<std::size_t> out;
    out.reserve(bound_ - indices_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < bound_; ++i) {
        if (k < indices_.size() && indices_[k] == i) {
            ++k;
            continue;
        }
        out.push_back(i);
    }
    return IndexSet(std::move(out), bound_);
}

// ---------------------------------------------------------------------------
// PrimeFieldMatrix

PrimeFieldMatrix::PrimeFieldMatrix(Residue p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    check_modulus(p);
}

PrimeFieldMatrix::PrimeFieldMatrix(Residue p, std::size_t rows, std::size_t cols,
                                   std::vector<Residue> entries)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_modulus(p);
    if (data_.size() != rows * cols)
        throw DimensionMismatch("entry count does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    for (Residue e : data_) {
        if (e >= p) throw InvalidParams("entry " + std::to_string(e) + " is not reduced mod p");
    }
}

PrimeFieldMatrix PrimeFieldMatrix::from_integers(Residue p, std::size_t rows, std::size_t cols,
                                                 std::span<const std::int64_t> values) {
    check_modulus(p);
    if (values.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
    std::vector<Residue> data(values.size());
    const auto sp = static_cast<std::int64_t>(p);
    std::transform(values.begin(), values.end(), data.begin(), [sp](std::int64_t v) {
        std::int64_t r = v % sp;
        return static_cast<Residue>(r < 0 ? r + sp : r);
    });
    return PrimeFieldMatrix(p, rows, cols, std::move(data));
}

PrimeFieldMatrix PrimeFieldMatrix::from_rows(
    Residue p, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<std::int64_t> flat;
    flat.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("ragged row list");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_integers(p, r, c, flat);
}

PrimeFieldMatrix PrimeFieldMatrix::identity(Residue p, std::size_t n) {
    std::vector<Residue> data(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1;
    return PrimeFieldMatrix(p, n, n, std::move(data));
}

PrimeFieldMatrix PrimeFieldMatrix::transpose() const {
    std::vector<Residue> out(data_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = data_[i * cols_ + j];
    return PrimeFieldMatrix(p_, cols_, rows_, std::move(out));
}

bool PrimeFieldMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

std::string PrimeFieldMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j);
        }
        os << '\n';
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const PrimeFieldMatrix& m) {
    return os << "GF(" << m.modulus() << ") " << m.rows() << "x" << m.cols() << "\n"
              << m.to_string();
}

PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw DimensionMismatch("moduli differ");
    if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
    const std::uint64_t p = a.modulus();
    std::vector<Residue> out(a.rows() * b.cols(), 0);
    std::vector<std::uint64_t> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t f = a(i, k);
            if (f == 0) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + f * brow[j]) % p;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] = static_cast<Residue>(acc[j]);
    }
    return PrimeFieldMatrix(a.modulus(), a.rows(), b.cols(), std::move(out));
}

PrimeFieldMatrix operator-(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw DimensionMismatch("moduli differ");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("shapes differ");
    const Residue p = a.modulus();
    std::vector<Residue> out(a.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Residue x = a.entries()[i];
        const Residue y = b.entries()[i];
        out[i] = x >= y ? x - y : x + (p - y);
    }
    return PrimeFieldMatrix(p, a.rows(), a.cols(), std::move(out));
}

// ---------------------------------------------------------------------------
// Elimination

namespace detail {

std::size_t eliminate(std::vector<Residue>& a, std::size_t rows, std::size_t cols,
                      std::size_t pivot_cols, Residue p, bool reduced) {
    const std::uint64_t pp = p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < pivot_cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
        Residue* prow = a.data() + rank * cols;
        const std::uint64_t inv = inverse_mod(prow[col], p);
        for (std::size_t j = col; j < cols; ++j) prow[j] = static_cast<Residue>(prow[j] * inv % pp);

        const std::size_t first = reduced ? 0 : rank + 1;
        for (std::size_t i = first; i < rows; ++i) {
            if (i == rank) continue;
            Residue* r = a.data() + i * cols;
            const std::uint64_t f = r[col];
            if (f == 0) continue;
            const std::uint64_t neg = pp - f;
            for (std::size_t j = col; j < cols; ++j) r[j] = static_cast<Residue>((r[j] + neg * prow[j]) % pp);
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_generic(const PrimeFieldMatrix& m) {
    std::vector<Residue> work(m.entries().begin(), m.entries().end());
    return eliminate(work, m.rows(), m.cols(), m.cols(), m.modulus(), false);
}

std::size_t rank_gf2_packed(const PrimeFieldMatrix& m) {
    if (m.modulus() != 2) throw InvalidParams("bit-packed rank requires p = 2");
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m(i, j)) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t mask = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows && !(bits[pivot * words + w] & mask)) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t k = 0; k < words; ++k) std::swap(bits[pivot * words + k], bits[rank * words + k]);
        const std::uint64_t* prow = bits.data() + rank * words;
        for (std::size_t i = rank + 1; i < rows; ++i) {
            std::uint64_t* r = bits.data() + i * words;
            if (!(r[w] & mask)) continue;
            for (std::size_t k = w; k < words; ++k) r[k] ^= prow[k];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

std::size_t rank_mod_p(const PrimeFieldMatrix& m) {
    if (m.modulus() == 2) return detail::rank_gf2_packed(m);
    return detail::rank_generic(m);
}

std::size_t corank_mod_p(const PrimeFieldMatrix& m) {
    return std::min(m.rows(), m.cols()) - rank_mod_p(m);
}

PrimeFieldMatrix submatrix(const PrimeFieldMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    if (rows.bound() != m.rows() || cols.bound() != m.cols())
        throw DimensionMismatch("index set bounds do not match matrix shape");
    std::vector<Residue> out;
    out.reserve(rows.size() * cols.size());
    for (std::size_t i : rows)
        for (std::size_t j : cols) out.push_back(m(i, j));
    return PrimeFieldMatrix(m.modulus(), rows.size(), cols.size(), std::move(out));
}

PrimeFieldMatrix inverse(const PrimeFieldMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const std::size_t width = 2 * n;
    std::vector<Residue> aug(n * width, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i * width + j] = m(i, j);
        aug[i * width + n + i] = 1;
    }
    if (detail::eliminate(aug, n, width, n, m.modulus(), true) < n)
        throw SingularBlock("matrix is not invertible mod " + std::to_string(m.modulus()));
    std::vector<Residue> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        std::copy_n(aug.begin() + static_cast<std::ptrdiff_t>(i * width + n), n,
                    out.begin() + static_cast<std::ptrdiff_t>(i * n));
    return PrimeFieldMatrix(m.modulus(), n, n, std::move(out));
}

PrimeFieldMatrix schur_complement(const PrimeFieldMatrix& m, const IndexSet& s) {
    if (!m.is_square()) throw DimensionMismatch("Schur complement of a non-square matrix");
    if (s.bound() != m.rows()) throw DimensionMismatch("index set bound differs from matrix dimension");
    const IndexSet t = s.complement();
    const PrimeFieldMatrix tt = submatrix(m, t, t);
    if (s.empty()) return tt;
    const PrimeFieldMatrix ss_inv = inverse(submatrix(m, s, s));
    if (t.empty()) return tt;
    return tt - submatrix(m, t, s) * (ss_inv * submatrix(m, s, t));
}

} // namespace sandrank::gfp
