// Dense integer matrices with the exact kernels behind everything else:
// Hermite normal form, saturated integer kernels, Bareiss determinants.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "polyml/arith.hpp"

namespace polyml {

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<BigInt> row(std::size_t r) const;
    std::vector<BigInt> col(std::size_t c) const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void negate_row(std::size_t r);
    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const BigInt& factor);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

struct HermiteResult {
    IntMatrix h;  // row-style Hermite normal form
    IntMatrix u;  // unimodular, h = u * m
};

/// Row-style HNF: echelon with positive pivots and entries above each pivot
/// reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& m);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& m);

/// Basis (as rows) of the saturated lattice {x : m * x^T = 0}. Any integer
/// solution is an integer combination of the returned rows.
IntMatrix integer_kernel_basis(const IntMatrix& m);

/// Exact determinant via fraction-free elimination.
BigInt determinant(const IntMatrix& m);

/// Whether x lies in the lattice generated by the rows of basis.
bool row_lattice_contains(const IntMatrix& basis, const std::vector<BigInt>& x);

/// Inverse of a matrix with determinant +-1, if it has one.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m);

}  // namespace polyml
