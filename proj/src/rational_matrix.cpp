#include "itop/rational_matrix.hpp"

#include <stdexcept>
#include <unordered_map>

namespace itop {

namespace {

// result = a + f * b, both sorted by row.
std::vector<SparseRationalMatrix::Entry>
axpy(const std::vector<SparseRationalMatrix::Entry>& a, const Rational& f,
     const std::vector<SparseRationalMatrix::Entry>& b) {
    std::vector<SparseRationalMatrix::Entry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = f * b[j].second;
            if (v != 0) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = a[i].second + f * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

SparseRationalMatrix::SparseRationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), columns_(static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

SparseRationalMatrix SparseRationalMatrix::from_triplets(
    int rows, int cols, const std::vector<std::tuple<int, int, Rational>>& triplets) {
    SparseRationalMatrix m(rows, cols);
    std::vector<std::vector<Entry>> cols_acc(static_cast<std::size_t>(cols));
    for (const auto& [r, c, v] : triplets) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("triplet index out of range");
        if (v != 0) cols_acc[static_cast<std::size_t>(c)].emplace_back(r, v);
    }
    for (int c = 0; c < cols; ++c) {
        auto& col = cols_acc[static_cast<std::size_t>(c)];
        std::sort(col.begin(), col.end(),
                  [](const Entry& x, const Entry& y) { return x.first < y.first; });
        for (std::size_t i = 1; i < col.size(); ++i)
            if (col[i].first == col[i - 1].first)
                throw std::invalid_argument("duplicate triplet entry");
        m.columns_[static_cast<std::size_t>(c)] = std::move(col);
    }
    return m;
}

void SparseRationalMatrix::set_column(int c, std::vector<Entry> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first < 0 || entries[i].first >= rows_)
            throw std::out_of_range("row index out of range");
        if (i > 0 && entries[i].first <= entries[i - 1].first)
            throw std::invalid_argument("column entries must be strictly sorted by row");
    }
    columns_[static_cast<std::size_t>(c)] = std::move(entries);
}

Rational SparseRationalMatrix::at(int r, int c) const {
    for (const auto& [row, v] : columns_[static_cast<std::size_t>(c)])
        if (row == r) return v;
    return Rational(0);
}

std::size_t SparseRationalMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
}

bool SparseRationalMatrix::is_zero() const { return nonzero_count() == 0; }

SparseRationalMatrix SparseRationalMatrix::multiply(const SparseRationalMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("matrix dimension mismatch in multiply");
    SparseRationalMatrix out(rows_, rhs.cols_);
    for (int j = 0; j < rhs.cols_; ++j) {
        std::vector<Entry> acc;
        for (const auto& [k, w] : rhs.columns_[static_cast<std::size_t>(j)])
            acc = axpy(acc, w, columns_[static_cast<std::size_t>(k)]);
        out.columns_[static_cast<std::size_t>(j)] = std::move(acc);
    }
    return out;
}

SparseRationalMatrix SparseRationalMatrix::leading_block(int r, int c) const {
    if (r > rows_ || c > cols_) throw std::out_of_range("block larger than matrix");
    SparseRationalMatrix out(r, c);
    for (int j = 0; j < c; ++j) {
        std::vector<Entry> col;
        for (const auto& e : columns_[static_cast<std::size_t>(j)]) {
            if (e.first >= r) break;
            col.push_back(e);
        }
        out.columns_[static_cast<std::size_t>(j)] = std::move(col);
    }
    return out;
}

SparseRationalMatrix SparseRationalMatrix::row_range(int row_begin, int row_end) const {
    if (row_begin < 0 || row_end > rows_ || row_begin > row_end)
        throw std::out_of_range("invalid row range");
    SparseRationalMatrix out(row_end - row_begin, cols_);
    for (int j = 0; j < cols_; ++j) {
        std::vector<Entry> col;
        for (const auto& e : columns_[static_cast<std::size_t>(j)])
            if (e.first >= row_begin && e.first < row_end)
                col.emplace_back(e.first - row_begin, e.second);
        out.columns_[static_cast<std::size_t>(j)] = std::move(col);
    }
    return out;
}

SparseRationalMatrix SparseRationalMatrix::transpose() const {
    SparseRationalMatrix out(cols_, rows_);
    std::vector<std::vector<Entry>> rows_acc(static_cast<std::size_t>(rows_));
    for (int j = 0; j < cols_; ++j)
        for (const auto& [r, v] : columns_[static_cast<std::size_t>(j)])
            rows_acc[static_cast<std::size_t>(r)].emplace_back(j, v);
    out.columns_ = std::move(rows_acc);
    return out;
}

int SparseRationalMatrix::rank() const {
    std::vector<std::vector<Entry>> work = columns_;
    std::unordered_map<int, int> pivot_column_of_row;
    int rank = 0;
    for (int j = 0; j < cols_; ++j) {
        auto& col = work[static_cast<std::size_t>(j)];
        while (!col.empty()) {
            const int low = col.back().first;
            auto it = pivot_column_of_row.find(low);
            if (it == pivot_column_of_row.end()) {
                pivot_column_of_row.emplace(low, j);
                ++rank;
                break;
            }
            const auto& pivot = work[static_cast<std::size_t>(it->second)];
            const Rational f = -col.back().second / pivot.back().second;
            col = axpy(col, f, pivot);
        }
    }
    return rank;
}

std::vector<std::vector<Rational>> SparseRationalMatrix::kernel_basis() const {
    std::vector<std::vector<Entry>> work = columns_;
    // mem[j] expresses the current column j as a combination of original columns.
    std::vector<std::vector<Entry>> mem(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) mem[static_cast<std::size_t>(j)] = {{j, Rational(1)}};

    std::unordered_map<int, int> pivot_column_of_row;
    std::vector<std::vector<Rational>> kernel;
    for (int j = 0; j < cols_; ++j) {
        auto& col = work[static_cast<std::size_t>(j)];
        while (!col.empty()) {
            const int low = col.back().first;
            auto it = pivot_column_of_row.find(low);
            if (it == pivot_column_of_row.end()) {
                pivot_column_of_row.emplace(low, j);
                break;
            }
            const auto& pivot = work[static_cast<std::size_t>(it->second)];
            const Rational f = -col.back().second / pivot.back().second;
            col = axpy(col, f, pivot);
            mem[static_cast<std::size_t>(j)] =
                axpy(mem[static_cast<std::size_t>(j)], f, mem[static_cast<std::size_t>(it->second)]);
        }
        if (col.empty()) {
            std::vector<Rational> v(static_cast<std::size_t>(cols_), Rational(0));
            for (const auto& [idx, val] : mem[static_cast<std::size_t>(j)])
                v[static_cast<std::size_t>(idx)] = val;
            kernel.push_back(std::move(v));
        }
    }
    return kernel;
}

Eigen::MatrixXd SparseRationalMatrix::to_double() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [r, v] : columns_[static_cast<std::size_t>(j)])
            m(r, j) = static_cast<double>(v);
    return m;
}

}  // namespace itop
