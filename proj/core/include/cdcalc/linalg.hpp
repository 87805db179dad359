#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdcalc/rational.hpp"

namespace cdcalc {

/// Dense row-major matrix over ℚ.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    RationalMatrix transposed() const;
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);

    bool operator==(const RationalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t rank(const RationalMatrix& m);

/// Columns form a basis of the right kernel {v : m v = 0}; cols() × dim.
RationalMatrix kernel_basis(const RationalMatrix& m);

/// [a | b] side by side; row counts must agree.
RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b);

/// Block-diagonal matrix with `copies` copies of m.
RationalMatrix block_diagonal(const RationalMatrix& m, std::size_t copies);

}  // namespace cdcalc
