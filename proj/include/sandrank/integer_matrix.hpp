#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace sandrank {

using BigInt = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix diagonal(const std::vector<BigInt>& values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<BigInt>& entries() const noexcept { return data_; }
    std::vector<BigInt>& entries() noexcept { return data_; }

    IntegerMatrix transpose() const;
    bool is_symmetric() const;

    /// Drops row `index` and column `index`.
    IntegerMatrix without_row_col(std::size_t index) const;

    std::string to_string() const;

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

/// Determinant by fraction-free (Bareiss) elimination. Square input required.
BigInt determinant(const IntegerMatrix& m);

} // namespace sandrank
