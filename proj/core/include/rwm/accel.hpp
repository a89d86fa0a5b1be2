#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rwm/engine.hpp"

namespace rwm {

/// Phase 1 updates vectors and relevance for `split_time` steps; phase 2
/// keeps the relevance frozen for at most `phase2_max` further steps.
struct PhasePlan {
    std::size_t split_time = 1;
    std::size_t phase2_max = 0;
};

/// Smallest T_e after which the modified transition stays within epsilon of
/// its limit:
///   multiplex: ceil(log_lambda(eps (1 - lambda) / K))
///   general:   ceil(log_lambda(eps (1 - lambda) / (K^2 (|V_i| + 2))))
/// Never less than 1.
std::size_t split_time(const RwmConfig& cfg, std::size_t layer_count, std::size_t layer_size,
                       Mode mode);

/// General mode takes the largest per-layer split time.
PhasePlan plan_phases(const MultiNetwork& mn, const RwmConfig& cfg);

enum class Strategy {
    power_iteration,  ///< exact steps, relevance updated every iteration
    early_stopping,   ///< exact steps, relevance frozen after T_e
    partial_update,   ///< early stopping plus BFS-restricted partial steps
};

std::string to_string(Strategy s);
/// Accepts "exact"/"poweriter", "a1", "a2" (case-sensitive).
Strategy strategy_from_string(const std::string& s);

struct StrategyResult {
    WalkerState state;
    std::size_t iterations = 0;
    bool converged = false;
    PhasePlan plan;
    std::vector<std::size_t> visited_at_split;  ///< per layer, at t = T_e (or the end if earlier)
};

StrategyResult run_strategy(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg,
                            Strategy strategy);

/// Early stopping with exact steps in both phases.
StrategyResult run_two_phase(const MultiNetwork& mn, const QuerySpec& query,
                             const RwmConfig& cfg);

/// BFS over `net` from `seeds`, popping nodes in FIFO order (neighbors in
/// ascending index order) until the popped mass of `x` reaches theta or the
/// queue runs dry. Popped nodes are appended to `popped`. `marks` must be
/// all-zero on entry and is left all-zero.
double bfs_cover(const Network& net, std::span<const double> x, std::span<const NodeId> seeds,
                 double theta, std::vector<std::uint8_t>& marks, std::vector<NodeId>& queue,
                 std::vector<NodeId>& popped);

struct PartialSplit {
    std::vector<double> covered;           ///< x_i restricted to the popped nodes
    double covered_mass = 0.0;
    std::vector<NodeId> frontier_visited;  ///< every popped node, in pop order
};

struct PartialStepResult {
    std::vector<double> next;
    PartialSplit split;
};

/// x~ = alpha * P_i (covered) + (1 - alpha * |covered|_1) * x_i^(0) for layer i.
PartialStepResult partial_step(const WalkerState& state, std::size_t i, const MultiNetwork& mn,
                               const RwmConfig& cfg);

/// Number of nodes with positive probability, per layer.
std::vector<std::size_t> visited_count(const WalkerState& state);

}  // namespace rwm
