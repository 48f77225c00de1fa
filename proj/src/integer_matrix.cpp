#include "sandrank/integer_matrix.hpp"

#include "sandrank/errors.hpp"

#include <ostream>
#include <sstream>
#include <utility>

namespace sandrank {

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntegerMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatch("ragged row list");
        std::size_t j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<BigInt>& values) {
    IntegerMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntegerMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

IntegerMatrix IntegerMatrix::without_row_col(std::size_t index) const {
    if (index >= rows_ || index >= cols_)
        throw IndexOutOfRange("cannot drop index " + std::to_string(index));
    IntegerMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
        if (i == index) continue;
        for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
            if (j == index) continue;
            out(oi, oj++) = (*this)(i, j);
        }
        ++oi;
    }
    return out;
}

std::string IntegerMatrix::to_string() const {
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

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    return os << m.rows() << "x" << m.cols() << "\n" << m.to_string();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
    IntegerMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const BigInt& f = a(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                mpz_addmul(out(i, j).get_mpz_t(), f.get_mpz_t(), b(k, j).get_mpz_t());
        }
    return out;
}

BigInt determinant(const IntegerMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<BigInt> a = m.entries();
    auto at = [&](std::size_t i, std::size_t j) -> mpz_ptr { return a[i * n + j].get_mpz_t(); };

    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (mpz_sgn(at(k, k)) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && mpz_sgn(at(swap_row, k)) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) mpz_swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // a_ij = (a_ij * a_kk - a_ik * a_kj) / prev, exact.
                mpz_mul(at(i, j), at(i, j), at(k, k));
                mpz_submul(at(i, j), at(i, k), at(k, j));
                mpz_divexact(at(i, j), at(i, j), prev.get_mpz_t());
            }
        }
        prev = a[k * n + k];
    }
    BigInt det = a[(n - 1) * n + (n - 1)];
    if (sign < 0) det = -det;
    return det;
}

} // namespace sandrank
