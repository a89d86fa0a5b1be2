#include "rwm/multinet.hpp"

#include <algorithm>
#include <sstream>

#include "rwm/error.hpp"

namespace rwm {

Network Network::from_edges(std::size_t node_count, std::span<const WeightedEdge> edges) {
    std::vector<Triplet> entries;
    entries.reserve(edges.size() * 2);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = edges[k];
        if (e.u >= node_count || e.v >= node_count) {
            std::ostringstream msg;
            msg << "edge " << k << " (" << e.u << ", " << e.v << ") out of range for " << node_count
                << " nodes";
            throw LoadError(msg.str());
        }
        if (!(e.w > 0.0)) {
            std::ostringstream msg;
            msg << "edge " << k << " (" << e.u << ", " << e.v << ") has non-positive weight " << e.w;
            throw LoadError(msg.str());
        }
        entries.push_back({e.v, e.u, e.w});
        entries.push_back({e.u, e.v, e.w});
    }
    Network net;
    net.node_count_ = node_count;
    net.adjacency_ = SparseColumns::from_triplets(node_count, node_count, std::move(entries));
    net.transition_ = net.adjacency_.column_normalized();
    net.degree_.resize(node_count);
    for (std::size_t u = 0; u < node_count; ++u) {
        net.degree_[u] = net.adjacency_.column_sum(u);
        net.volume_ += net.degree_[u];
    }
    return net;
}

bool Network::has_edge(NodeId u, NodeId v) const {
    const auto rows = adjacency_.column_rows(u);
    return std::binary_search(rows.begin(), rows.end(), v);
}

double Network::edge_weight(NodeId u, NodeId v) const {
    const auto rows = adjacency_.column_rows(u);
    const auto it = std::lower_bound(rows.begin(), rows.end(), v);
    if (it == rows.end() || *it != v) return 0.0;
    return adjacency_.column_values(u)[static_cast<std::size_t>(it - rows.begin())];
}

std::vector<WeightedEdge> Network::edges() const {
    std::vector<WeightedEdge> out;
    for (NodeId u = 0; u < node_count_; ++u) {
        const auto rows = adjacency_.column_rows(u);
        const auto vals = adjacency_.column_values(u);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k] < u) continue;
            // a self-loop was inserted twice
            out.push_back({u, rows[k], rows[k] == u ? vals[k] / 2.0 : vals[k]});
        }
    }
    return out;
}

std::size_t Network::edge_count() const {
    std::size_t m = 0;
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : adjacency_.column_rows(u))
            if (v >= u) ++m;
    return m;
}

std::pair<CrossTransition, CrossTransition> make_cross_pair(std::size_t i, const Network& net_i,
                                                            std::size_t j, const Network& net_j,
                                                            std::span<const WeightedEdge> records) {
    std::vector<Triplet> forward;
    std::vector<Triplet> backward;
    forward.reserve(records.size());
    backward.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& e = records[k];
        if (e.u >= net_i.node_count() || e.v >= net_j.node_count()) {
            std::ostringstream msg;
            msg << "cross edge " << k << " (" << e.u << ", " << e.v << ") out of range for layers "
                << i << " (" << net_i.node_count() << " nodes) and " << j << " ("
                << net_j.node_count() << " nodes)";
            throw LoadError(msg.str());
        }
        if (!(e.w > 0.0)) {
            std::ostringstream msg;
            msg << "cross edge " << k << " has non-positive weight " << e.w;
            throw LoadError(msg.str());
        }
        forward.push_back({e.v, e.u, e.w});
        backward.push_back({e.u, e.v, e.w});
    }
    CrossTransition ij{i, j,
                       SparseColumns::from_triplets(net_j.node_count(), net_i.node_count(),
                                                    std::move(forward))
                           .column_normalized()};
    CrossTransition ji{j, i,
                       SparseColumns::from_triplets(net_i.node_count(), net_j.node_count(),
                                                    std::move(backward))
                           .column_normalized()};
    return {std::move(ij), std::move(ji)};
}

std::string to_string(Mode m) { return m == Mode::multiplex ? "multiplex" : "general"; }

Mode mode_from_string(const std::string& s) {
    if (s == "multiplex") return Mode::multiplex;
    if (s == "general") return Mode::general;
    throw InputError("unknown mode '" + s + "' (expected multiplex or general)");
}

MultiNetwork MultiNetwork::multiplex(std::vector<Network> layers) {
    if (layers.empty()) throw ConstructionError("a multi-network needs at least one layer");
    const std::size_t n = layers.front().node_count();
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].node_count() != n) {
            std::ostringstream msg;
            msg << "multiplex layers must share the node set: layer 0 has " << n
                << " nodes, layer " << i << " has " << layers[i].node_count();
            throw ConstructionError(msg.str());
        }
    }
    MultiNetwork mn;
    mn.mode_ = Mode::multiplex;
    mn.layers_ = std::move(layers);
    mn.max_nodes_ = n;
    return mn;
}

MultiNetwork MultiNetwork::general(std::vector<Network> layers, std::vector<CrossTransition> cross) {
    if (layers.empty()) throw ConstructionError("a multi-network needs at least one layer");
    const std::size_t k = layers.size();
    MultiNetwork mn;
    mn.mode_ = Mode::general;
    mn.cross_.resize(k * k);
    for (auto& c : cross) {
        if (c.from_layer >= k || c.to_layer >= k || c.from_layer == c.to_layer) {
            std::ostringstream msg;
            msg << "invalid cross operator " << c.from_layer << " -> " << c.to_layer;
            throw ConstructionError(msg.str());
        }
        if (c.matrix.cols() != layers[c.from_layer].node_count() ||
            c.matrix.rows() != layers[c.to_layer].node_count()) {
            std::ostringstream msg;
            msg << "cross operator " << c.from_layer << " -> " << c.to_layer
                << " has shape " << c.matrix.rows() << "x" << c.matrix.cols();
            throw ConstructionError(msg.str());
        }
        auto& slot = mn.cross_[c.from_layer * k + c.to_layer];
        if (slot) {
            std::ostringstream msg;
            msg << "duplicate cross operator " << c.from_layer << " -> " << c.to_layer;
            throw ConstructionError(msg.str());
        }
        slot = std::move(c.matrix);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && mn.cross_[i * k + j].has_value() != mn.cross_[j * k + i].has_value()) {
                std::ostringstream msg;
                msg << "cross operator " << i << " -> " << j << " has no reverse operator";
                throw ConstructionError(msg.str());
            }
        }
    }
    mn.layers_ = std::move(layers);
    for (const auto& l : mn.layers_) mn.max_nodes_ = std::max(mn.max_nodes_, l.node_count());

    // 1^T S_{j->i} P_j S_{i->j}, evaluated left to right as row vectors.
    mn.survival_.resize(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j || !mn.cross_[i * k + j]) continue;
            const auto& back = *mn.cross_[j * k + i];   // S_{j->i}
            const auto& fwd = *mn.cross_[i * k + j];    // S_{i->j}
            const auto& pj = mn.layers_[j].transition();
            std::vector<double> returns(back.cols(), 0.0);  // over V_j
            for (std::size_t v = 0; v < back.cols(); ++v) returns[v] = back.column_sum(v);
            std::vector<double> through(pj.cols(), 0.0);  // over V_j
            for (std::size_t w = 0; w < pj.cols(); ++w) {
                const auto rows = pj.column_rows(w);
                const auto vals = pj.column_values(w);
                double s = 0.0;
                for (std::size_t t = 0; t < rows.size(); ++t) s += vals[t] * returns[rows[t]];
                through[w] = s;
            }
            auto& g = mn.survival_[i * k + j];
            g.assign(fwd.cols(), 0.0);
            for (std::size_t u = 0; u < fwd.cols(); ++u) {
                const auto rows = fwd.column_rows(u);
                const auto vals = fwd.column_values(u);
                double s = 0.0;
                for (std::size_t t = 0; t < rows.size(); ++t) s += vals[t] * through[rows[t]];
                g[u] = s;
            }
        }
    }
    return mn;
}

const SparseColumns* MultiNetwork::cross(std::size_t from, std::size_t to) const {
    if (mode_ == Mode::multiplex || from == to) return nullptr;
    const auto& slot = cross_[from * layers_.size() + to];
    return slot ? &*slot : nullptr;
}

double MultiNetwork::survival(std::size_t i, std::size_t j, NodeId u) const {
    if (mode_ == Mode::multiplex) return layers_[j].isolated(u) ? 0.0 : 1.0;
    if (i == j) return layers_[i].isolated(u) ? 0.0 : 1.0;
    const auto& g = survival_[i * layers_.size() + j];
    return g.empty() ? 0.0 : g[u];
}

MultiNetwork MultiNetwork::with_layer(std::size_t i, Network replacement) const {
    if (i >= layers_.size() || replacement.node_count() != layers_[i].node_count())
        throw ConstructionError("replacement layer must keep the node set");
    auto layers = layers_;
    layers[i] = std::move(replacement);
    if (mode_ == Mode::multiplex) return multiplex(std::move(layers));
    std::vector<CrossTransition> cross;
    const std::size_t k = layers_.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (cross_[a * k + b]) cross.push_back({a, b, *cross_[a * k + b]});
    return general(std::move(layers), std::move(cross));
}

void QuerySpec::validate(const MultiNetwork& mn) const {
    if (layer >= mn.layer_count()) {
        std::ostringstream msg;
        msg << "query layer " << layer << " does not exist (" << mn.layer_count() << " layers)";
        throw InputError(msg.str());
    }
    if (nodes.empty()) throw InputError("query node set is empty");
    for (NodeId u : nodes) {
        if (u >= mn.layer(layer).node_count()) {
            std::ostringstream msg;
            msg << "query node " << u << " out of range for layer " << layer << " ("
                << mn.layer(layer).node_count() << " nodes)";
            throw InputError(msg.str());
        }
    }
}

ValidationReport validate(const MultiNetwork& mn) {
    ValidationReport report;
    const std::size_t k = mn.layer_count();
    for (std::size_t i = 0; i < k; ++i) {
        ValidationReport::IsolatedNodes iso{i, {}};
        const auto& net = mn.layer(i);
        for (NodeId u = 0; u < net.node_count(); ++u)
            if (net.isolated(u)) iso.nodes.push_back(u);
        if (!iso.nodes.empty()) report.isolated.push_back(std::move(iso));
    }
    if (mn.mode() == Mode::multiplex) return report;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const auto* s = mn.cross(i, j);
            if (!s || s->nnz() == 0) {
                report.unreachable.push_back({i, j});
                continue;
            }
            std::size_t zeros = 0;
            for (std::size_t u = 0; u < s->cols(); ++u)
                if (s->column_size(u) == 0) ++zeros;
            if (zeros > 0) report.zero_cross_columns.push_back({i, j, zeros});
        }
    }
    return report;
}

std::vector<std::string> ValidationReport::messages() const {
    std::vector<std::string> out;
    for (const auto& iso : isolated) {
        std::ostringstream msg;
        msg << "layer " << iso.layer << " has " << iso.nodes.size() << " isolated node(s)";
        out.push_back(msg.str());
    }
    for (const auto& z : zero_cross_columns) {
        std::ostringstream msg;
        msg << z.count << " node(s) of layer " << z.from << " have no cross-edge into layer "
            << z.to;
        out.push_back(msg.str());
    }
    for (const auto& u : unreachable) {
        std::ostringstream msg;
        msg << "layer " << u.to << " unreachable from " << u.from;
        out.push_back(msg.str());
    }
    return out;
}

}  // namespace rwm
