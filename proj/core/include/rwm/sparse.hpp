#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rwm {

using NodeId = std::uint32_t;

struct Triplet {
    NodeId row;
    NodeId col;
    double value;
};

/// Row-major dense matrix, used only for small materializations.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    /// Maximum absolute row sum.
    double inf_norm() const;
};

/// Compressed sparse column matrix. Column c lists (row, value) pairs with
/// strictly increasing rows. A column-stochastic operator applied to x is
/// the scatter of each x[c] along column c.
class SparseColumns {
public:
    SparseColumns() = default;
    SparseColumns(std::size_t rows, std::size_t cols);

    /// Duplicate (row, col) entries are summed.
    static SparseColumns from_triplets(std::size_t rows, std::size_t cols,
                                       std::vector<Triplet> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return indices_.size(); }

    std::span<const NodeId> column_rows(std::size_t c) const {
        return {indices_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
    }
    std::span<const double> column_values(std::size_t c) const {
        return {values_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
    }
    std::size_t column_size(std::size_t c) const { return offsets_[c + 1] - offsets_[c]; }
    double column_sum(std::size_t c) const;

    /// Every non-empty column scaled to sum 1; empty columns stay empty.
    SparseColumns column_normalized() const;

    /// y = A x (dense).
    std::vector<double> multiply(std::span<const double> x) const;

    DenseMatrix to_dense() const;

    friend bool operator==(const SparseColumns&, const SparseColumns&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> indices_;
    std::vector<double> values_;
};

/// Scatter target that remembers which slots were written so it can be
/// cleared in time proportional to its support.
class SparseAccumulator {
public:
    SparseAccumulator() = default;
    explicit SparseAccumulator(std::size_t n) : values_(n, 0.0), seen_(n, 0) {}

    void resize(std::size_t n) {
        clear();
        values_.assign(n, 0.0);
        seen_.assign(n, 0);
    }
    std::size_t size() const noexcept { return values_.size(); }

    void add(NodeId idx, double v) {
        if (!seen_[idx]) {
            seen_[idx] = 1;
            touched_.push_back(idx);
        }
        values_[idx] += v;
    }

    double operator[](NodeId idx) const { return values_[idx]; }
    std::span<const NodeId> touched() const noexcept { return touched_; }
    bool empty() const noexcept { return touched_.empty(); }

    void scale(double f) {
        for (NodeId u : touched_) values_[u] *= f;
    }

    void clear() {
        for (NodeId u : touched_) {
            values_[u] = 0.0;
            seen_[u] = 0;
        }
        touched_.clear();
    }

private:
    std::vector<double> values_;
    std::vector<std::uint8_t> seen_;
    std::vector<NodeId> touched_;
};

}  // namespace rwm
