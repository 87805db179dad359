#include "cdcalc/linalg.hpp"

#include <utility>

#include "cdcalc/errors.hpp"

namespace cdcalc {

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool RationalMatrix::is_zero() const
{
    for (const auto& q : data_)
        if (sgn(q) != 0)
            return false;
    return true;
}

RationalMatrix RationalMatrix::transposed() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw DimensionError("matrix product dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0)
                    out(i, j) += x * b(k, j);
        }
    return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix sum dimension mismatch");
    RationalMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k)
        out.data_[k] += b.data_[k];
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(m(r, c)) != 0)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(m(r, c)) != 0)
                a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }

    std::size_t rk = 0;
    Integer prev = 1;
    Integer tmp;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t p = rk;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rk]);
        const Integer& piv = a[rk][c];
        for (std::size_t i = rk + 1; i < rows; ++i) {
            const Integer lead = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // a[i][j] = (piv*a[i][j] - lead*a[rk][j]) / prev, exact
                tmp = piv * a[i][j];
                if (sgn(lead) != 0 && sgn(a[rk][j]) != 0)
                    tmp -= lead * a[rk][j];
                if (prev != 1)
                    mpz_divexact(tmp.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = tmp;
            }
            a[i][c] = 0;
        }
        prev = piv;
        ++rk;
    }
    return rk;
}

RationalMatrix kernel_basis(const RationalMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    RationalMatrix a = m;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a(p, c)) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(a(r, j)) != 0)
                    a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    RationalMatrix basis(cols, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(f, k) = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            basis(pivot_cols[i], k) = -a(i, f);
    }
    return basis;
}

RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows() != b.rows())
        throw DimensionError("hconcat row mismatch");
    RationalMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c)
            out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

RationalMatrix block_diagonal(const RationalMatrix& m, std::size_t copies)
{
    RationalMatrix out(m.rows() * copies, m.cols() * copies);
    for (std::size_t k = 0; k < copies; ++k)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                out(k * m.rows() + r, k * m.cols() + c) = m(r, c);
    return out;
}

}  // namespace cdcalc
