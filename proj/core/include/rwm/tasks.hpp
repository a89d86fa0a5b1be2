#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "rwm/accel.hpp"
#include "rwm/engine.hpp"
#include "rwm/multinet.hpp"

namespace rwm {

// ---------------------------------------------------------------------------
// Local community detection

struct Community {
    std::size_t layer = 0;
    std::vector<NodeId> members;  ///< in ranking order
    double conductance = 1.0;
    std::size_t prefix_len = 0;
};

/// cut(S, V \ S) / min(vol(S), vol(V \ S)) with weighted degrees. A zero
/// denominator yields 1. Throws InputError for the empty or the full set.
double conductance(std::span<const NodeId> members, const Network& net);

/// Ranks the positive entries of `scores` (descending, ties by ascending
/// index) and returns the prefix of minimum conductance. The full node set
/// is never a candidate; ties keep the shorter prefix.
Community sweep_cut(std::span<const double> scores, const Network& net, std::size_t layer = 0);

/// Runs the walkers from `query` and sweeps every layer.
std::vector<Community> detect_local_communities(const MultiNetwork& mn, const QuerySpec& query,
                                                const RwmConfig& cfg, Strategy strategy);

/// Harmonic mean of precision and recall of `detected` against `truth`.
double f1_score(std::span<const NodeId> detected, std::span<const NodeId> truth);

// ---------------------------------------------------------------------------
// Link prediction

struct ScoredPair {
    NodeId u;
    NodeId v;
    double score;
};

struct RankedPairs {
    std::size_t layer = 0;
    std::vector<ScoredPair> pairs;  ///< u < v, non-increasing score, ties by (u, v)
};

using EdgeSet = std::set<std::pair<NodeId, NodeId>>;  ///< stored with first < second

/// One run per source node of the target layer; score(u, v) is the larger of
/// the two directed proximities. Returns the top-k pairs that are not edges.
RankedPairs predict_links(const MultiNetwork& mn, std::size_t target, const RwmConfig& cfg,
                          std::size_t k, Strategy strategy, std::size_t workers = 1);

/// |top-k of predicted that appear in probe| / k. Requires k <= |predicted|.
double precision_at_k(const RankedPairs& predicted, const EdgeSet& probe, std::size_t k);

struct ProbeSplit {
    MultiNetwork reduced;
    EdgeSet probe;
};

/// Removes round(fraction * |E|) uniformly chosen edges of the target layer.
ProbeSplit remove_probe_edges(const MultiNetwork& mn, std::size_t target, double fraction,
                              std::uint64_t seed);

// ---------------------------------------------------------------------------
// Context sampling

struct SamplerParams {
    std::size_t walk_length = 40;  ///< transitions per walk
    std::size_t walks_per_node = 10;
    std::optional<double> p;       ///< return bias (second-order walks need both p and q)
    std::optional<double> q;       ///< in-out bias
    std::uint64_t seed = 0;
};

struct WalkCorpus {
    std::size_t layer = 0;
    std::vector<std::vector<NodeId>> walks;  ///< walks_per_node walks per start node, in node order
    SamplerParams params;
};

/// Column access to the static modified transition of one layer once the
/// relevance is frozen. Columns are sorted by node id and cached.
class FrozenOperator {
public:
    FrozenOperator(const MultiNetwork& mn, std::size_t layer, WalkerState frozen);

    std::size_t layer() const noexcept { return layer_; }
    std::span<const std::pair<NodeId, double>> column(NodeId u);

private:
    std::size_t layer_;
    Walker walker_;
    std::vector<double> unit_;
    SparseAccumulator out_;
    std::vector<std::optional<std::vector<std::pair<NodeId, double>>>> cache_;
};

/// For every start node: a two-phase run seeded at that node freezes the
/// operator, then walks are drawn from it (first order, or node2vec-style
/// second order when p and q are set). Start node u uses seed ^ u.
WalkCorpus sample_contexts(const MultiNetwork& mn, std::size_t target, const RwmConfig& cfg,
                           const SamplerParams& params, Strategy strategy = Strategy::partial_update,
                           std::size_t workers = 1);

}  // namespace rwm
