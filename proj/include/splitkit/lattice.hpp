#pragma once

// Full-rank integer lattices in Z^n with exact Hermite and Smith normal forms.

#include <vector>

#include "splitkit/group.hpp"

namespace splitkit {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::vector<Int> column(std::size_t c) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

// Basis vectors are the columns of `basis`, kept in column Hermite normal
// form: upper triangular, positive diagonal, and 0 <= basis(i, j) < basis(i, i)
// for j > i.
class IntegerLattice {
public:
    // Throws std::invalid_argument if the columns do not span a rank-n lattice.
    static IntegerLattice from_generators(const IntMatrix& generators);

    std::size_t dimension() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }
    Int index() const { return index_; }  // |det|
    bool contains(const std::vector<Int>& x) const;
    // Least q > 0 with q Z^n inside the lattice (largest invariant factor).
    Int period() const;

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    IntMatrix basis_;
    Int index_ = 0;
};

IntMatrix hermite_normal_form(const IntMatrix& generators);

// U * A * V = diag(invariants) with U, V unimodular, each invariant
// dividing the next. Only U is retained: it maps Z^n onto the quotient.
struct SmithForm {
    std::vector<Int> invariants;
    IntMatrix left;  // U
};

SmithForm smith_normal_form(const IntMatrix& a);

}  // namespace splitkit
