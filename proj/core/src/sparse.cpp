#include "rwm/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace rwm {

double DenseMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

SparseColumns::SparseColumns(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), offsets_(cols + 1, 0) {}

SparseColumns SparseColumns::from_triplets(std::size_t rows, std::size_t cols,
                                           std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    SparseColumns m(rows, cols);
    m.indices_.reserve(entries.size());
    m.values_.reserve(entries.size());
    std::vector<std::size_t> counts(cols, 0);
    for (std::size_t k = 0; k < entries.size();) {
        const auto& e = entries[k];
        double v = 0.0;
        std::size_t l = k;
        for (; l < entries.size() && entries[l].col == e.col && entries[l].row == e.row; ++l)
            v += entries[l].value;
        m.indices_.push_back(e.row);
        m.values_.push_back(v);
        ++counts[e.col];
        k = l;
    }
    for (std::size_t c = 0; c < cols; ++c) m.offsets_[c + 1] = m.offsets_[c] + counts[c];
    return m;
}

double SparseColumns::column_sum(std::size_t c) const {
    double s = 0.0;
    for (double v : column_values(c)) s += v;
    return s;
}

SparseColumns SparseColumns::column_normalized() const {
    SparseColumns out = *this;
    for (std::size_t c = 0; c < cols_; ++c) {
        const double s = column_sum(c);
        if (s <= 0.0) continue;
        for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) out.values_[k] = values_[k] / s;
    }
    return out;
}

std::vector<double> SparseColumns::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) {
        const double xc = x[c];
        if (xc == 0.0) continue;
        for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) y[indices_[k]] += values_[k] * xc;
    }
    return y;
}

DenseMatrix SparseColumns::to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) d(indices_[k], c) = values_[k];
    return d;
}

}  // namespace rwm
