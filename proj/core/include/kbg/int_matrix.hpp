#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kbg {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

// Dense row-major matrix over arbitrary-precision integers. Group-theoretic
// computations here routinely overflow 64-bit intermediates (minors, Bezout
// cascades), so everything stays exact.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    bool is_zero() const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix negated() const;
    IntVec apply(const IntVec& x) const;

    IntMatrix column(std::size_t j) const;
    // Columns picked by index, in the given order.
    IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    // [this | o] and [this ; o].
    IntMatrix hcat(const IntMatrix& o) const;
    IntMatrix vcat(const IntMatrix& o) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += c * row j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    // col i += c * col j
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    // Exact determinant (Bareiss fraction-free elimination); square only.
    Int determinant() const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

} // namespace kbg
