#include "rwm/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rwm/error.hpp"
#include "rwm/parallel.hpp"
#include "rwm/random.hpp"

namespace rwm {

namespace {

constexpr double kTieTolerance = 1e-12;

double ratio(double cut, double vol, double total) {
    const double denom = std::min(vol, total - vol);
    return denom > 0.0 ? cut / denom : 1.0;
}

// Adjacency weight from u to the current set, excluding u itself.
double weight_into(const Network& net, NodeId u, const std::vector<std::uint8_t>& in_set) {
    const auto rows = net.adjacency().column_rows(u);
    const auto vals = net.adjacency().column_values(u);
    double s = 0.0;
    for (std::size_t t = 0; t < rows.size(); ++t)
        if (rows[t] != u && in_set[rows[t]]) s += vals[t];
    return s;
}

}  // namespace

double conductance(std::span<const NodeId> members, const Network& net) {
    std::vector<std::uint8_t> in_set(net.node_count(), 0);
    std::size_t size = 0;
    for (NodeId u : members) {
        if (u >= net.node_count()) throw InputError("member index out of range");
        if (!in_set[u]) {
            in_set[u] = 1;
            ++size;
        }
    }
    if (size == 0 || size == net.node_count())
        throw InputError("conductance is undefined for the empty and the full node set");
    double vol = 0.0;
    double cut = 0.0;
    for (NodeId u = 0; u < net.node_count(); ++u) {
        if (!in_set[u]) continue;
        vol += net.degree(u);
        const auto rows = net.adjacency().column_rows(u);
        const auto vals = net.adjacency().column_values(u);
        for (std::size_t t = 0; t < rows.size(); ++t)
            if (!in_set[rows[t]]) cut += vals[t];
    }
    return ratio(cut, vol, net.total_volume());
}

Community sweep_cut(std::span<const double> scores, const Network& net, std::size_t layer) {
    std::vector<NodeId> order;
    for (std::size_t u = 0; u < scores.size(); ++u)
        if (scores[u] > 0.0) order.push_back(static_cast<NodeId>(u));
    if (order.empty()) throw InputError("sweep needs at least one positive score");
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });

    const std::size_t limit = std::min(order.size(), net.node_count() - 1);
    if (limit == 0) throw InputError("sweep needs a layer with at least two nodes");
    std::vector<std::uint8_t> in_set(net.node_count(), 0);
    double vol = 0.0;
    double cut = 0.0;
    Community best;
    best.layer = layer;
    best.conductance = 2.0;
    for (std::size_t l = 0; l < limit; ++l) {
        const NodeId u = order[l];
        const double inside = weight_into(net, u, in_set);
        const double loop = net.edge_weight(u, u);
        cut += net.degree(u) - loop - 2.0 * inside;
        vol += net.degree(u);
        in_set[u] = 1;
        const double c = ratio(std::max(cut, 0.0), vol, net.total_volume());
        if (c < best.conductance - kTieTolerance) {
            best.conductance = c;
            best.prefix_len = l + 1;
        }
    }
    best.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best.prefix_len));
    best.conductance = std::min(best.conductance, 1.0);
    return best;
}

std::vector<Community> detect_local_communities(const MultiNetwork& mn, const QuerySpec& query,
                                                const RwmConfig& cfg, Strategy strategy) {
    const auto result = run_strategy(mn, query, cfg, strategy);
    std::vector<Community> out;
    for (std::size_t i = 0; i < mn.layer_count(); ++i)
        out.push_back(sweep_cut(result.state.x[i].values, mn.layer(i), i));
    return out;
}

double f1_score(std::span<const NodeId> detected, std::span<const NodeId> truth) {
    std::vector<NodeId> a(detected.begin(), detected.end());
    std::vector<NodeId> b(truth.begin(), truth.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<NodeId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) return 0.0;
    const double precision = static_cast<double>(common.size()) / static_cast<double>(a.size());
    const double recall = static_cast<double>(common.size()) / static_cast<double>(b.size());
    return 2.0 * precision * recall / (precision + recall);
}

// ---------------------------------------------------------------------------

RankedPairs predict_links(const MultiNetwork& mn, std::size_t target, const RwmConfig& cfg,
                          std::size_t k, Strategy strategy, std::size_t workers) {
    if (k < 1) throw InputError("k must be at least 1");
    if (target >= mn.layer_count()) throw InputError("target layer does not exist");
    const Network& net = mn.layer(target);
    const std::size_t n = net.node_count();

    // proximity[u] = sparse (node, score) of the walk seeded at u, sorted by node
    std::vector<std::vector<std::pair<NodeId, double>>> proximity(n);
    parallel_for(n, workers, [&](std::size_t u) {
        const auto r = run_strategy(mn, QuerySpec{target, {static_cast<NodeId>(u)}}, cfg, strategy);
        const auto& x = r.state.x[target];
        auto& row = proximity[u];
        for (NodeId v : x.support) row.emplace_back(v, x.values[v]);
        std::sort(row.begin(), row.end());
    });
    auto lookup = [&](NodeId u, NodeId v) {
        const auto& row = proximity[u];
        const auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(v, 0.0),
                                         [](const auto& a, const auto& b) { return a.first < b.first; });
        return it != row.end() && it->first == v ? it->second : 0.0;
    };

    std::vector<ScoredPair> candidates;
    for (NodeId u = 0; u < n; ++u) {
        for (const auto& [v, s] : proximity[u]) {
            if (v == u || net.has_edge(u, v)) continue;
            const NodeId a = std::min(u, v);
            const NodeId b = std::max(u, v);
            // each unordered pair once: from the smaller endpoint, or from the
            // larger one when the smaller endpoint never reaches it
            if (u == a || lookup(a, b) == 0.0)
                candidates.push_back({a, b, std::max(lookup(a, b), lookup(b, a))});
        }
    }
    auto ranked = [](const ScoredPair& x, const ScoredPair& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    };
    std::sort(candidates.begin(), candidates.end(), ranked);
    if (candidates.size() > k) candidates.resize(k);

    // pad with zero-score non-edges in index order
    if (candidates.size() < k) {
        std::vector<std::pair<NodeId, NodeId>> taken;
        for (const auto& c : candidates) taken.emplace_back(c.u, c.v);
        std::sort(taken.begin(), taken.end());
        for (NodeId u = 0; u < n && candidates.size() < k; ++u) {
            for (NodeId v = u + 1; v < n && candidates.size() < k; ++v) {
                if (net.has_edge(u, v)) continue;
                if (std::binary_search(taken.begin(), taken.end(), std::make_pair(u, v))) continue;
                candidates.push_back({u, v, 0.0});
            }
        }
    }
    return RankedPairs{target, std::move(candidates)};
}

double precision_at_k(const RankedPairs& predicted, const EdgeSet& probe, std::size_t k) {
    if (k < 1) throw InputError("k must be at least 1");
    if (k > predicted.pairs.size()) {
        std::ostringstream msg;
        msg << "k = " << k << " exceeds the " << predicted.pairs.size() << " predicted pairs";
        throw InputError(msg.str());
    }
    std::size_t hits = 0;
    for (std::size_t r = 0; r < k; ++r) {
        const auto& p = predicted.pairs[r];
        if (probe.contains({std::min(p.u, p.v), std::max(p.u, p.v)})) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(k);
}

ProbeSplit remove_probe_edges(const MultiNetwork& mn, std::size_t target, double fraction,
                              std::uint64_t seed) {
    if (target >= mn.layer_count()) throw InputError("target layer does not exist");
    if (!(fraction >= 0.0 && fraction < 1.0)) throw InputError("probe fraction must lie in [0, 1)");
    const Network& net = mn.layer(target);
    auto edges = net.edges();
    std::erase_if(edges, [](const WeightedEdge& e) { return e.u == e.v; });
    Rng rng(seed);
    rng.shuffle(edges.begin(), edges.end());
    const auto removed =
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(edges.size())));
    ProbeSplit split;
    for (std::size_t e = 0; e < removed; ++e) split.probe.insert({edges[e].u, edges[e].v});
    std::vector<WeightedEdge> kept(edges.begin() + static_cast<std::ptrdiff_t>(removed), edges.end());
    for (const auto& e : net.edges())
        if (e.u == e.v) kept.push_back(e);
    split.reduced = mn.with_layer(target, Network::from_edges(net.node_count(), kept));
    return split;
}

// ---------------------------------------------------------------------------

FrozenOperator::FrozenOperator(const MultiNetwork& mn, std::size_t layer, WalkerState frozen)
    : layer_(layer),
      walker_(mn, std::move(frozen), RwmConfig{}),
      unit_(mn.layer(layer).node_count(), 0.0),
      out_(mn.layer(layer).node_count()),
      cache_(mn.layer(layer).node_count()) {}

std::span<const std::pair<NodeId, double>> FrozenOperator::column(NodeId u) {
    auto& slot = cache_[u];
    if (!slot) {
        std::vector<std::pair<NodeId, double>> col;
        unit_[u] = 1.0;
        const NodeId nodes[] = {u};
        if (walker_.propagate(layer_, unit_, nodes, out_))
            for (NodeId v : out_.touched()) col.emplace_back(v, out_[v]);
        unit_[u] = 0.0;
        out_.clear();
        std::sort(col.begin(), col.end());
        slot = std::move(col);
    }
    return *slot;
}

namespace {

NodeId draw(std::span<const std::pair<NodeId, double>> col, std::span<const double> weights,
            Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = rng.uniform() * total;
    for (std::size_t t = 0; t < col.size(); ++t) {
        r -= weights[t];
        if (r < 0.0) return col[t].first;
    }
    // rounding left a sliver of mass past the end
    for (std::size_t t = col.size(); t-- > 0;)
        if (weights[t] > 0.0) return col[t].first;
    return col.back().first;
}

bool in_column(std::span<const std::pair<NodeId, double>> col, NodeId v) {
    const auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(v, 0.0),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return it != col.end() && it->first == v;
}

}  // namespace

WalkCorpus sample_contexts(const MultiNetwork& mn, std::size_t target, const RwmConfig& cfg,
                           const SamplerParams& params, Strategy strategy, std::size_t workers) {
    if (target >= mn.layer_count()) throw InputError("target layer does not exist");
    if (params.p.has_value() != params.q.has_value())
        throw InputError("second-order walks need both p and q");
    if (params.p && !(*params.p > 0.0 && *params.q > 0.0)) throw InputError("p and q must be positive");
    const std::size_t n = mn.layer(target).node_count();
    const std::size_t per = params.walks_per_node;

    WalkCorpus corpus;
    corpus.layer = target;
    corpus.params = params;
    corpus.walks.resize(n * per);
    parallel_for(n, workers, [&](std::size_t start) {
        const auto u = static_cast<NodeId>(start);
        auto run = run_strategy(mn, QuerySpec{target, {u}}, cfg, strategy);
        FrozenOperator op(mn, target, std::move(run.state));
        Rng rng(params.seed ^ static_cast<std::uint64_t>(u));
        std::vector<double> weights;
        for (std::size_t w = 0; w < per; ++w) {
            auto& walk = corpus.walks[start * per + w];
            walk.push_back(u);
            for (std::size_t s = 0; s < params.walk_length; ++s) {
                const NodeId cur = walk.back();
                const auto col = op.column(cur);
                if (col.empty()) break;
                weights.resize(col.size());
                if (params.p && walk.size() >= 2) {
                    const NodeId prev = walk[walk.size() - 2];
                    const auto prev_col = op.column(prev);
                    for (std::size_t t = 0; t < col.size(); ++t) {
                        const NodeId cand = col[t].first;
                        double bias = 1.0 / *params.q;
                        if (cand == prev) {
                            bias = 1.0 / *params.p;
                        } else if (in_column(prev_col, cand)) {
                            bias = 1.0;
                        }
                        weights[t] = col[t].second * bias;
                    }
                } else {
                    for (std::size_t t = 0; t < col.size(); ++t) weights[t] = col[t].second;
                }
                walk.push_back(draw(col, weights, rng));
            }
        }
    });
    return corpus;
}

}  // namespace rwm
