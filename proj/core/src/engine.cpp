#include "rwm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "rwm/accel.hpp"
#include "rwm/error.hpp"

namespace rwm {

void RwmConfig::validate() const {
    auto fail = [](const std::string& what) { throw InputError(what); };
    if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0, 1]");
    if (!(lambda > 0.0 && lambda < 1.0)) fail("lambda must lie in (0, 1)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
    if (!(theta > 0.0 && theta <= 1.0)) fail("theta must lie in (0, 1]");
    if (max_iters < 1) fail("max_iters must be at least 1");
    if (!(vector_tol >= 0.0)) fail("vector_tol must be non-negative");
}

ScoreVector ScoreVector::from_dense(std::vector<double> dense) {
    ScoreVector s;
    s.values = std::move(dense);
    for (std::size_t u = 0; u < s.values.size(); ++u)
        if (s.values[u] > 0.0) s.support.push_back(static_cast<NodeId>(u));
    return s;
}

double ScoreVector::l1() const {
    double s = 0.0;
    for (NodeId u : support) s += std::abs(values[u]);
    return s;
}

RelevanceMatrix RelevanceMatrix::identity(std::size_t k) {
    RelevanceMatrix m;
    m.k_ = k;
    m.hi_.assign(k * k, 0.0);
    m.lo_.assign(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) m.hi_[i * k + i] = 1.0;
    return m;
}

void RelevanceMatrix::set(std::size_t i, std::size_t j, double value) {
    hi_[i * k_ + j] = value;
    lo_[i * k_ + j] = 0.0;
}

void RelevanceMatrix::add(std::size_t i, std::size_t j, double increment) {
    // two-sum: hi + increment == s + err exactly
    double& hi = hi_[i * k_ + j];
    const double s = hi + increment;
    const double b = s - hi;
    const double err = (hi - (s - b)) + (increment - b);
    hi = s;
    lo_[i * k_ + j] += err;
}

std::vector<long double> RelevanceMatrix::precise_normalized_row(std::size_t i) const {
    std::vector<long double> row(k_);
    long double s = 0.0L;
    for (std::size_t j = 0; j < k_; ++j) s += row[j] = precise(i, j);
    for (auto& v : row) v /= s;
    return row;
}

std::vector<double> RelevanceMatrix::normalized_row(std::size_t i) const {
    const auto precise_row = precise_normalized_row(i);
    return {precise_row.begin(), precise_row.end()};
}

namespace {

/// Pairwise cosine of restart-adjusted histories (K x K, row-major).
/// cos(i, j) compares y_i with S_{j->i} y_j.
std::vector<double> history_cosines(const MultiNetwork& mn, const std::vector<ScoreVector>& x,
                                    const std::vector<ScoreVector>& x0, double alpha,
                                    std::vector<SparseAccumulator>& y,
                                    SparseAccumulator& mapped) {
    const std::size_t k = mn.layer_count();
    std::vector<double> norms(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        y[i].clear();
        double sq = 0.0;
        for (NodeId u : x[i].support) {
            const double v = x[i].values[u] - (1.0 - alpha) * x0[i].values[u];
            if (v > 0.0) {
                y[i].add(u, v);
                sq += v * v;
            }
        }
        norms[i] = std::sqrt(sq);
    }

    std::vector<double> cos(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) cos[i * k + i] = norms[i] > 0.0 ? 1.0 : 0.0;

    if (mn.mode() == Mode::multiplex) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                if (norms[i] == 0.0 || norms[j] == 0.0) continue;
                const auto& a = y[i].touched().size() <= y[j].touched().size() ? y[i] : y[j];
                const auto& b = &a == &y[i] ? y[j] : y[i];
                double dot = 0.0;
                for (NodeId u : a.touched()) dot += a[u] * b[u];
                const double c = std::clamp(dot / (norms[i] * norms[j]), 0.0, 1.0);
                cos[i * k + j] = c;
                cos[j * k + i] = c;
            }
        }
        return cos;
    }

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j || norms[i] == 0.0 || norms[j] == 0.0) continue;
            const SparseColumns* back = mn.cross(j, i);
            if (!back) continue;
            mapped.clear();
            for (NodeId u : y[j].touched()) {
                const double yu = y[j][u];
                const auto rows = back->column_rows(u);
                const auto vals = back->column_values(u);
                for (std::size_t t = 0; t < rows.size(); ++t) mapped.add(rows[t], vals[t] * yu);
            }
            double dot = 0.0;
            double sq = 0.0;
            for (NodeId v : mapped.touched()) {
                dot += mapped[v] * y[i][v];
                sq += mapped[v] * mapped[v];
            }
            if (sq > 0.0) cos[i * k + j] = std::clamp(dot / (norms[i] * std::sqrt(sq)), 0.0, 1.0);
        }
    }
    mapped.clear();
    return cos;
}

RelevanceMatrix add_increment(const RelevanceMatrix& prev, const std::vector<double>& cos,
                              double decay) {
    RelevanceMatrix next = prev;
    const std::size_t k = prev.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) next.add(i, j, decay * cos[i * k + j]);
    return next;
}

std::vector<SparseAccumulator> layer_accumulators(const MultiNetwork& mn) {
    std::vector<SparseAccumulator> acc;
    acc.reserve(mn.layer_count());
    for (const auto& l : mn.layers()) acc.emplace_back(l.node_count());
    return acc;
}

// Nodes of layer q reached first (fewest hops from the query) that have a
// cross-edge into the target; returns the hop count or nullopt.
std::optional<std::size_t> nearest_cross_hop(const Network& gq, const SparseColumns& s,
                                             std::span<const NodeId> sources) {
    std::vector<std::size_t> dist(gq.node_count(), SIZE_MAX);
    std::queue<NodeId> frontier;
    for (NodeId u : sources) {
        if (dist[u] == SIZE_MAX) {
            dist[u] = 0;
            frontier.push(u);
        }
    }
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop();
        if (s.column_size(u) > 0) return dist[u];
        for (NodeId v : gq.neighbors(u)) {
            if (dist[v] == SIZE_MAX) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return std::nullopt;
}

void normalize_l1(std::vector<double>& v) {
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    if (s > 0.0 && s != 1.0)
        for (double& e : v) e /= s;
}

}  // namespace

WalkerState init_state(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& /*cfg*/) {
    query.validate(mn);
    const std::size_t k = mn.layer_count();
    const std::size_t q = query.layer;

    std::vector<NodeId> nodes = query.nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<double> xq(mn.layer(q).node_count(), 0.0);
    for (NodeId u : nodes) xq[u] = 1.0 / static_cast<double>(nodes.size());

    WalkerState state;
    state.x0.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (i == q || mn.mode() == Mode::multiplex) {
            state.x0[i] = ScoreVector::from_dense(xq);
            continue;
        }
        const SparseColumns* s = mn.cross(q, i);
        std::ostringstream why;
        why << "layer " << i << " unreachable from query layer " << q;
        if (!s) throw InitError(i, why.str() + ": no cross-edges between the layers");
        std::vector<double> xi = s->multiply(xq);
        if (std::accumulate(xi.begin(), xi.end(), 0.0) <= 0.0) {
            const auto hops = nearest_cross_hop(mn.layer(q), *s, nodes);
            if (!hops)
                throw InitError(i, why.str() +
                                       ": no node connected to the query has a cross-edge into it");
            std::vector<double> walked = xq;
            for (std::size_t h = 0; h < *hops; ++h)
                walked = mn.layer(q).transition().multiply(walked);
            xi = s->multiply(walked);
        }
        normalize_l1(xi);
        state.x0[i] = ScoreVector::from_dense(std::move(xi));
    }
    state.x = state.x0;
    state.relevance = RelevanceMatrix::identity(k);
    state.t = 0;
    return state;
}

RelevanceMatrix update_relevance(const WalkerState& state, const MultiNetwork& mn,
                                 const RwmConfig& cfg) {
    auto y = layer_accumulators(mn);
    SparseAccumulator mapped(mn.max_layer_size());
    const auto cos = history_cosines(mn, state.x, state.x0, cfg.alpha, y, mapped);
    return add_increment(state.relevance, cos, std::pow(cfg.lambda, static_cast<double>(state.t)));
}

std::optional<std::vector<double>> apply_modified_transition(std::size_t i,
                                                             const WalkerState& state,
                                                             const MultiNetwork& mn) {
    Walker walker(mn, state, RwmConfig{});
    SparseAccumulator out(mn.layer(i).node_count());
    if (!walker.propagate(i, state.x[i].values, state.x[i].support, out)) return std::nullopt;
    std::vector<double> z(mn.layer(i).node_count(), 0.0);
    for (NodeId v : out.touched()) z[v] = out[v];
    return z;
}

WalkerState step(const WalkerState& state, const MultiNetwork& mn, const RwmConfig& cfg) {
    Walker walker(mn, state, cfg);
    walker.advance(true);
    return walker.release();
}

RunResult run(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg) {
    cfg.validate();
    Walker walker(mn, query, cfg);
    RunResult result;
    while (result.iterations < cfg.max_iters) {
        const double change = walker.advance(true);
        ++result.iterations;
        if (change < cfg.vector_tol) {
            result.converged = true;
            break;
        }
    }
    result.state = walker.release();
    return result;
}

namespace {

// Dense operator in scalar type T; the residual uses extended precision so
// that differences far below the rounding unit of the entries stay visible.
template <class T>
std::vector<T> dense_operator(const MultiNetwork& mn, std::size_t i, const RelevanceMatrix& relevance,
                              std::size_t dense_cap) {
    const std::size_t n = mn.layer(i).node_count();
    if (n > dense_cap) {
        std::ostringstream msg;
        msg << "layer " << i << " has " << n << " nodes, above the dense cap " << dense_cap;
        throw InputError(msg.str());
    }
    const auto w = relevance.precise_normalized_row(i);
    std::vector<T> m(n * n, T(0));
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < mn.layer_count(); ++j) {
        if (w[j] == 0.0L) continue;
        const auto& pj = mn.layer(j).transition();
        const SparseColumns* fwd = mn.cross(i, j);
        const SparseColumns* back = mn.cross(j, i);
        const bool identity = j == i || mn.mode() == Mode::multiplex;
        if (!identity && (!fwd || !back)) continue;
        for (std::size_t u = 0; u < n; ++u) {
            e[u] = 1.0;
            const auto col = identity ? pj.multiply(e) : back->multiply(pj.multiply(fwd->multiply(e)));
            e[u] = 0.0;
            for (std::size_t r = 0; r < n; ++r) m[r * n + u] += static_cast<T>(w[j]) * static_cast<T>(col[r]);
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        T s(0);
        for (std::size_t r = 0; r < n; ++r) s += m[r * n + u];
        if (s > T(0))
            for (std::size_t r = 0; r < n; ++r) m[r * n + u] /= s;
    }
    return m;
}

}  // namespace

DenseMatrix modified_transition_dense(const MultiNetwork& mn, std::size_t i,
                                      const RelevanceMatrix& relevance, std::size_t dense_cap) {
    const std::size_t n = mn.layer(i).node_count();
    DenseMatrix m(n, n);
    m.data = dense_operator<double>(mn, i, relevance, dense_cap);
    return m;
}

std::vector<double> transition_residual(const MultiNetwork& mn, const WalkerState& before,
                                        const WalkerState& after, std::size_t dense_cap) {
    std::vector<double> out;
    for (std::size_t i = 0; i < mn.layer_count(); ++i) {
        const std::size_t n = mn.layer(i).node_count();
        const auto a = dense_operator<long double>(mn, i, before.relevance, dense_cap);
        const auto b = dense_operator<long double>(mn, i, after.relevance, dense_cap);
        long double worst = 0.0L;
        for (std::size_t r = 0; r < n; ++r) {
            long double row = 0.0L;
            for (std::size_t c = 0; c < n; ++c) row += std::fabs(b[r * n + c] - a[r * n + c]);
            worst = std::max(worst, row);
        }
        out.push_back(static_cast<double>(worst));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Walker

Walker::Walker(const MultiNetwork& mn, WalkerState state, const RwmConfig& cfg)
    : mn_(&mn), cfg_(cfg), state_(std::move(state)) {
    const std::size_t k = mn.layer_count();
    if (state_.x.size() != k || state_.x0.size() != k || state_.relevance.size() != k)
        throw InputError("walker state does not match the multi-network");
    next_.resize(k);
    for (std::size_t i = 0; i < k; ++i) next_[i].values.assign(mn.layer(i).node_count(), 0.0);
    out_ = layer_accumulators(mn);
    mid_a_.assign(k, SparseAccumulator{});
    mid_b_.assign(k, SparseAccumulator{});
    if (mn.mode() == Mode::general && k > 1) {
        for (std::size_t i = 0; i < k; ++i) {
            mid_a_[i].resize(mn.max_layer_size());
            mid_b_[i].resize(mn.max_layer_size());
        }
    }
    cover_stats_.assign(k, CoverStats{});
    covered_.assign(k, {});
    marks_.resize(k);
    min_popped_.assign(k, 0);
    refresh_normalized();
}

Walker::Walker(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg)
    : Walker(mn, init_state(mn, query, cfg), cfg) {}

void Walker::refresh_normalized() {
    const std::size_t k = mn_->layer_count();
    normalized_.resize(k);
    for (std::size_t i = 0; i < k; ++i) normalized_[i] = state_.relevance.normalized_row(i);
}

bool Walker::propagate(std::size_t i, std::span<const double> values,
                       std::span<const NodeId> nodes, SparseAccumulator& out) {
    const MultiNetwork& mn = *mn_;
    const auto& w = normalized_[i];
    const std::size_t k = mn.layer_count();
    const bool multiplex = mn.mode() == Mode::multiplex;
    out.clear();

    // Column normalization: mass at u is divided by the column sum of the
    // modified transition at u; all-zero columns drop their mass here.
    std::vector<std::pair<NodeId, double>> scaled;
    scaled.reserve(nodes.size());
    double in_mass = 0.0;
    double lost = 0.0;
    for (NodeId u : nodes) {
        const double xu = values[u];
        if (!(xu > 0.0)) continue;
        in_mass += xu;
        double colsum = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (w[j] > 0.0) colsum += w[j] * mn.survival(i, j, u);
        if (colsum > 0.0) {
            scaled.emplace_back(u, xu / colsum);
        } else {
            lost += xu;
        }
    }
    if (scaled.empty()) return false;

    for (std::size_t j = 0; j < k; ++j) {
        const double wj = w[j];
        if (wj == 0.0) continue;
        const auto& pj = mn.layer(j).transition();
        if (j == i || multiplex) {
            for (const auto& [u, s] : scaled) {
                const auto rows = pj.column_rows(u);
                const auto vals = pj.column_values(u);
                const double f = wj * s;
                for (std::size_t t = 0; t < rows.size(); ++t) out.add(rows[t], f * vals[t]);
            }
            continue;
        }
        const SparseColumns* fwd = mn.cross(i, j);
        const SparseColumns* back = mn.cross(j, i);
        if (!fwd || !back) continue;
        // right to left: S_{i->j}, then P_j, then S_{j->i}
        auto& a = mid_a_[i];
        auto& b = mid_b_[i];
        a.clear();
        for (const auto& [u, s] : scaled) {
            const auto rows = fwd->column_rows(u);
            const auto vals = fwd->column_values(u);
            for (std::size_t t = 0; t < rows.size(); ++t) a.add(rows[t], s * vals[t]);
        }
        b.clear();
        for (NodeId v : a.touched()) {
            const auto rows = pj.column_rows(v);
            const auto vals = pj.column_values(v);
            const double av = a[v];
            for (std::size_t t = 0; t < rows.size(); ++t) b.add(rows[t], av * vals[t]);
        }
        for (NodeId v : b.touched()) {
            const auto rows = back->column_rows(v);
            const auto vals = back->column_values(v);
            const double f = wj * b[v];
            for (std::size_t t = 0; t < rows.size(); ++t) out.add(rows[t], f * vals[t]);
        }
        a.clear();
        b.clear();
    }
    if (out.empty()) return false;

    if (lost > 0.0) {
        double out_mass = 0.0;
        for (NodeId v : out.touched()) out_mass += out[v];
        if (out_mass <= 0.0) return false;
        out.scale(in_mass / out_mass);
    }
    return true;
}

void Walker::compose_next(std::size_t i, bool propagated, double restart_weight) {
    auto& next = next_[i];
    for (NodeId u : next.support) next.values[u] = 0.0;
    next.support.clear();
    const double alpha = cfg_.alpha;
    const auto& x0 = state_.x0[i];
    if (propagated) {
        const auto& out = out_[i];
        for (NodeId v : out.touched()) {
            const double val = alpha * out[v];
            if (val > 0.0) {
                next.values[v] = val;
                next.support.push_back(v);
            }
        }
    }
    for (NodeId v : x0.support) {
        const double add = restart_weight * x0.values[v];
        if (!(add > 0.0)) continue;
        if (next.values[v] == 0.0) next.support.push_back(v);
        next.values[v] += add;
    }
}

double Walker::advance(bool update_relevance) {
    const std::size_t k = mn_->layer_count();
    for (std::size_t i = 0; i < k; ++i) {
        const bool ok = propagate(i, state_.x[i].values, state_.x[i].support, out_[i]);
        // a step with nothing to propagate restarts in full
        compose_next(i, ok, ok ? 1.0 - cfg_.alpha : 1.0);
    }
    return finish_step(update_relevance);
}

void Walker::operator_neighbors(std::size_t i, NodeId u, std::vector<NodeId>& out) const {
    const MultiNetwork& mn = *mn_;
    const auto& w = normalized_[i];
    const bool multiplex = mn.mode() == Mode::multiplex;
    out.clear();
    for (std::size_t j = 0; j < mn.layer_count(); ++j) {
        if (w[j] == 0.0) continue;
        if (j == i || multiplex) {
            const auto nb = mn.layer(j).neighbors(u);
            out.insert(out.end(), nb.begin(), nb.end());
            continue;
        }
        const SparseColumns* fwd = mn.cross(i, j);
        const SparseColumns* back = mn.cross(j, i);
        if (!fwd || !back) continue;
        for (NodeId a : fwd->column_rows(u))
            for (NodeId b : mn.layer(j).neighbors(a))
                for (NodeId v : back->column_rows(b)) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

double Walker::operator_bfs(std::size_t i, double theta, std::size_t min_popped) {
    const auto& x = state_.x[i].values;
    auto& marks = marks_[i];
    auto& popped = covered_[i];
    queue_.clear();
    for (NodeId u : state_.x0[i].support) {
        if (!marks[u]) {
            marks[u] = 1;
            queue_.push_back(u);
        }
    }
    double cover = 0.0;
    std::size_t head = 0;
    while (head < queue_.size() && (cover < theta || popped.size() < min_popped)) {
        const NodeId u = queue_[head++];
        operator_neighbors(i, u, neighbors_);
        for (NodeId v : neighbors_) {
            if (!marks[v]) {
                marks[v] = 1;
                queue_.push_back(v);
            }
        }
        popped.push_back(u);
        cover += x[u];
    }
    for (NodeId u : queue_) marks[u] = 0;
    return cover;
}

double Walker::advance_partial(double theta, bool update_relevance) {
    const std::size_t k = mn_->layer_count();
    for (std::size_t i = 0; i < k; ++i) {
        const auto& net = mn_->layer(i);
        auto& marks = marks_[i];
        if (marks.size() != net.node_count()) marks.assign(net.node_count(), 0);
        covered_[i].clear();
        const double cover = operator_bfs(i, theta, frozen_before_ ? min_popped_[i] : 0);
        min_popped_[i] = covered_[i].size();
        cover_stats_[i] = {cover, covered_[i].size()};
        const bool ok = propagate(i, state_.x[i].values, covered_[i], out_[i]);
        compose_next(i, ok, ok ? 1.0 - cfg_.alpha * cover : 1.0);
    }
    frozen_before_ = true;  // cleared again if the relevance moves
    return finish_step(update_relevance);
}

double Walker::finish_step(bool update_relevance) {
    const std::size_t k = mn_->layer_count();
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& cur = state_.x[i];
        const auto& nxt = next_[i];
        double d = 0.0;
        for (NodeId v : nxt.support) d += std::abs(nxt.values[v] - cur.values[v]);
        for (NodeId v : cur.support)
            if (nxt.values[v] == 0.0) d += cur.values[v];
        change = std::max(change, d);
    }
    for (std::size_t i = 0; i < k; ++i) std::swap(state_.x[i], next_[i]);
    ++state_.t;
    if (update_relevance) {
        frozen_before_ = false;
        // propagation buffers double as history scratch; the mapped buffer is
        // only touched in general mode, where mid_a_ is allocated
        SparseAccumulator& mapped = mid_a_[0].size() > 0 ? mid_a_[0] : scratch_map_;
        const auto cos = history_cosines(*mn_, state_.x, state_.x0, cfg_.alpha, out_, mapped);
        for (auto& o : out_) o.clear();
        state_.relevance = add_increment(state_.relevance, cos,
                                         std::pow(cfg_.lambda, static_cast<double>(state_.t)));
        refresh_normalized();
    }
    return change;
}

}  // namespace rwm
