#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwm/sparse.hpp"

namespace rwm {

struct WeightedEdge {
    NodeId u;
    NodeId v;
    double w;
};

/// One undirected weighted layer with its column-stochastic transition
/// matrix. Column u of transition() is the one-step distribution out of u;
/// isolated nodes keep an empty column.
class Network {
public:
    Network() = default;

    /// Each edge is inserted in both directions; repeated pairs accumulate.
    /// Throws LoadError on non-positive weights or out-of-range endpoints.
    static Network from_edges(std::size_t node_count, std::span<const WeightedEdge> edges);

    std::size_t node_count() const noexcept { return node_count_; }
    const SparseColumns& adjacency() const noexcept { return adjacency_; }
    const SparseColumns& transition() const noexcept { return transition_; }

    double degree(NodeId u) const { return degree_[u]; }
    std::span<const double> degrees() const noexcept { return degree_; }
    bool isolated(NodeId u) const { return adjacency_.column_size(u) == 0; }
    double total_volume() const noexcept { return volume_; }

    std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.column_rows(u); }
    bool has_edge(NodeId u, NodeId v) const;
    double edge_weight(NodeId u, NodeId v) const;

    /// Each undirected edge once with u <= v, carrying its input weight.
    std::vector<WeightedEdge> edges() const;
    std::size_t edge_count() const;

private:
    std::size_t node_count_ = 0;
    SparseColumns adjacency_;
    SparseColumns transition_;
    std::vector<double> degree_;
    double volume_ = 0.0;
};

/// Column-stochastic |V_to| x |V_from| operator moving mass across layers.
struct CrossTransition {
    std::size_t from_layer = 0;
    std::size_t to_layer = 0;
    SparseColumns matrix;
};

/// Builds S_{i->j} and S_{j->i} from bipartite records (u in V_i, v in V_j).
/// The two directions are normalized independently.
std::pair<CrossTransition, CrossTransition> make_cross_pair(
    std::size_t i, const Network& net_i, std::size_t j, const Network& net_j,
    std::span<const WeightedEdge> records);

enum class Mode { multiplex, general };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

class MultiNetwork {
public:
    MultiNetwork() = default;

    /// Same node set in every layer; cross operators are implicit identities.
    static MultiNetwork multiplex(std::vector<Network> layers);

    /// Distinct node sets linked by explicit cross operators. Both directions
    /// of every declared pair must be present.
    static MultiNetwork general(std::vector<Network> layers, std::vector<CrossTransition> cross);

    Mode mode() const noexcept { return mode_; }
    std::size_t layer_count() const noexcept { return layers_.size(); }
    const Network& layer(std::size_t i) const { return layers_[i]; }
    std::span<const Network> layers() const noexcept { return layers_; }
    std::size_t max_layer_size() const noexcept { return max_nodes_; }

    /// S_{from->to}; nullptr in multiplex mode or when the pair has no operator.
    const SparseColumns* cross(std::size_t from, std::size_t to) const;

    /// Column sum of S_{j->i} P_j S_{i->j} at node u of layer i, i.e. the
    /// fraction of mass leaving u that returns to layer i through layer j.
    double survival(std::size_t i, std::size_t j, NodeId u) const;

    /// Copy with layer i replaced by a network over the same node set.
    MultiNetwork with_layer(std::size_t i, Network replacement) const;

private:
    Mode mode_ = Mode::multiplex;
    std::vector<Network> layers_;
    std::vector<std::optional<SparseColumns>> cross_;  // K*K, index from*K+to
    std::vector<std::vector<double>> survival_;        // K*K, general mode, i != j
    std::size_t max_nodes_ = 0;
};

/// Starting distribution: uniform mass over `nodes` of layer `layer`.
struct QuerySpec {
    std::size_t layer = 0;
    std::vector<NodeId> nodes;

    /// Throws InputError if empty or out of range.
    void validate(const MultiNetwork& mn) const;
};

struct ValidationReport {
    struct IsolatedNodes {
        std::size_t layer;
        std::vector<NodeId> nodes;
    };
    struct ZeroCrossColumns {
        std::size_t from;
        std::size_t to;
        std::size_t count;
    };
    struct Unreachable {
        std::size_t from;
        std::size_t to;
    };

    std::vector<IsolatedNodes> isolated;
    std::vector<ZeroCrossColumns> zero_cross_columns;
    std::vector<Unreachable> unreachable;

    bool empty() const noexcept {
        return isolated.empty() && zero_cross_columns.empty() && unreachable.empty();
    }
    std::vector<std::string> messages() const;
};

ValidationReport validate(const MultiNetwork& mn);

}  // namespace rwm
