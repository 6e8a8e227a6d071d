#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <tuple>
#include <utility>
#include <vector>

namespace itop {

using Rational = boost::multiprecision::mpq_rational;

/// Sparse column-major matrix over the rationals. Entries within a column are
/// kept sorted by row index, explicit zeros are never stored. All arithmetic
/// is exact.
class SparseRationalMatrix {
public:
    using Entry = std::pair<int, Rational>;  // (row, value)

    SparseRationalMatrix(int rows, int cols);

    static SparseRationalMatrix
    from_triplets(int rows, int cols,
                  const std::vector<std::tuple<int, int, Rational>>& triplets);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // Sets the column from entries sorted by row; overwrites any previous content.
    void set_column(int c, std::vector<Entry> entries);
    const std::vector<Entry>& column(int c) const { return columns_[c]; }

    Rational at(int r, int c) const;
    std::size_t nonzero_count() const;
    bool is_zero() const;

    // this * rhs, exact.
    SparseRationalMatrix multiply(const SparseRationalMatrix& rhs) const;

    // Submatrix of the first `r` rows and `c` columns.
    SparseRationalMatrix leading_block(int r, int c) const;

    // Rows [row_begin, row_end), reindexed to start at 0.
    SparseRationalMatrix row_range(int row_begin, int row_end) const;

    SparseRationalMatrix transpose() const;

    // Rank over the rationals (exact Gaussian elimination).
    int rank() const;

    // Exact basis of the null space; each vector has length cols().
    // The basis vectors are linearly independent by construction.
    std::vector<std::vector<Rational>> kernel_basis() const;

    Eigen::MatrixXd to_double() const;

private:
    int rows_;
    int cols_;
    std::vector<std::vector<Entry>> columns_;
};

}  // namespace itop
