#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwm/multinet.hpp"
#include "rwm/sparse.hpp"

namespace rwm {

struct RwmConfig {
    double alpha = 0.9;          ///< continuation probability; 1 - alpha restarts
    double lambda = 0.7;         ///< decay of relevance increments
    double epsilon = 0.01;       ///< operator tolerance used to pick the split time
    double theta = 0.9;          ///< covering factor of partial updates
    std::size_t max_iters = 1000;
    double vector_tol = 1e-9;    ///< stop when every layer moves less than this in L1
    std::uint64_t seed = 0;

    /// Throws InputError when a field is outside its domain.
    void validate() const;
};

/// Visiting probabilities of one walker. `values` is dense; `support` lists
/// exactly the indices with a positive value.
struct ScoreVector {
    std::vector<double> values;
    std::vector<NodeId> support;

    static ScoreVector from_dense(std::vector<double> dense);

    double l1() const;
    std::size_t visited() const noexcept { return support.size(); }
};

/// K x K cumulative relevance between walkers. Increments shrink
/// geometrically, so each entry carries a compensation term that keeps
/// late increments that fall below the rounding unit of the entry.
class RelevanceMatrix {
public:
    RelevanceMatrix() = default;
    static RelevanceMatrix identity(std::size_t k);

    std::size_t size() const noexcept { return k_; }
    double operator()(std::size_t i, std::size_t j) const { return hi_[i * k_ + j]; }
    /// Entry including the compensation term.
    long double precise(std::size_t i, std::size_t j) const {
        return static_cast<long double>(hi_[i * k_ + j]) + lo_[i * k_ + j];
    }

    void set(std::size_t i, std::size_t j, double value);
    void add(std::size_t i, std::size_t j, double increment);

    /// Row i scaled to sum 1.
    std::vector<double> normalized_row(std::size_t i) const;
    std::vector<long double> precise_normalized_row(std::size_t i) const;

private:
    std::size_t k_ = 0;
    std::vector<double> hi_;
    std::vector<double> lo_;
};

struct WalkerState {
    std::vector<ScoreVector> x;
    std::vector<ScoreVector> x0;
    RelevanceMatrix relevance;
    std::size_t t = 0;
};

/// x_q gets the query distribution; every other layer receives it through
/// S_{q->i}, falling back to the nearest (BFS hop count in layer q) nodes
/// with cross-edges into layer i. Throws InitError if no such node exists.
WalkerState init_state(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg);

/// W^(t) from W^(t-1) held in `state` and the time-t vectors. Cosine is taken
/// between restart-adjusted histories, negative entries clamped to zero;
/// a zero vector has cosine 0 with everything.
RelevanceMatrix update_relevance(const WalkerState& state, const MultiNetwork& mn,
                                 const RwmConfig& cfg);

/// Column-normalized modified transition of layer i applied to x_i^(t),
/// without materializing the operator. Mass that sits on all-zero columns is
/// redistributed over the result. Returns nullopt when nothing propagates.
std::optional<std::vector<double>> apply_modified_transition(std::size_t i,
                                                             const WalkerState& state,
                                                             const MultiNetwork& mn);

/// One synchronous restart step followed by the relevance update.
WalkerState step(const WalkerState& state, const MultiNetwork& mn, const RwmConfig& cfg);

struct RunResult {
    WalkerState state;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Power iteration until the L1 change of every walker drops below
/// cfg.vector_tol or cfg.max_iters steps have been taken.
RunResult run(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg);

/// Dense column-normalized modified transition of layer i under `relevance`.
/// Throws InputError if the layer exceeds `dense_cap` nodes.
DenseMatrix modified_transition_dense(const MultiNetwork& mn, std::size_t i,
                                      const RelevanceMatrix& relevance,
                                      std::size_t dense_cap = 2048);

/// Per-layer max-row-sum norm of the change in the modified transition
/// between two states (test-scale graphs only).
std::vector<double> transition_residual(const MultiNetwork& mn, const WalkerState& before,
                                        const WalkerState& after, std::size_t dense_cap = 2048);

/// Covered part of a partial update: what was propagated and how the BFS ran.
struct CoverStats {
    double covered_mass = 0.0;
    std::size_t popped = 0;
};

/// Stateful iterator that owns the walkers and their scratch buffers.
/// Propagation work is proportional to the support of the vectors, not to
/// the layer sizes.
class Walker {
public:
    Walker(const MultiNetwork& mn, WalkerState state, const RwmConfig& cfg);
    Walker(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg);

    const WalkerState& state() const noexcept { return state_; }
    WalkerState release() { return std::move(state_); }

    /// Exact step. Returns max over layers of ||x_i^(t+1) - x_i^(t)||_1.
    double advance(bool update_relevance = true);

    /// Partial step: only the BFS-covered part of each vector (covering at
    /// least theta of its mass when reachable) is propagated.
    double advance_partial(double theta, bool update_relevance = true);

    /// Per-layer cover statistics of the last partial step.
    std::span<const CoverStats> last_cover() const noexcept { return cover_stats_; }
    /// Nodes popped by the BFS of layer i during the last partial step.
    std::span<const NodeId> last_popped(std::size_t i) const { return covered_[i]; }

    /// Propagates the entries `nodes` of `values` through the modified
    /// transition of layer i into `out`. Returns false when nothing moved.
    bool propagate(std::size_t i, std::span<const double> values, std::span<const NodeId> nodes,
                   SparseAccumulator& out);

private:
    void compose_next(std::size_t i, bool propagated, double restart_weight);
    double finish_step(bool update_relevance);
    void operator_neighbors(std::size_t i, NodeId u, std::vector<NodeId>& out) const;
    double operator_bfs(std::size_t i, double theta, std::size_t min_popped);
    void refresh_normalized();

    const MultiNetwork* mn_;
    RwmConfig cfg_;
    WalkerState state_;
    std::vector<std::vector<double>> normalized_;  // cached rows of W-hat
    std::vector<ScoreVector> next_;
    std::vector<SparseAccumulator> out_;
    std::vector<SparseAccumulator> mid_a_;
    std::vector<SparseAccumulator> mid_b_;
    SparseAccumulator scratch_map_;
    std::vector<CoverStats> cover_stats_;
    std::vector<std::vector<NodeId>> covered_;
    std::vector<std::vector<std::uint8_t>> marks_;
    std::vector<NodeId> queue_;
    std::vector<NodeId> neighbors_;
    // while the relevance stays frozen the BFS order is fixed; the covered
    // prefix never shrinks, which rules out cycling between prefixes
    std::vector<std::size_t> min_popped_;
    bool frozen_before_ = false;
};

}  // namespace rwm
