#include "rwm/accel.hpp"

#include <algorithm>
#include <cmath>

#include "rwm/error.hpp"

namespace rwm {

std::size_t split_time(const RwmConfig& cfg, std::size_t layer_count, std::size_t layer_size,
                       Mode mode) {
    if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) throw InputError("lambda must lie in (0, 1)");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
    const double k = static_cast<double>(layer_count);
    double target = cfg.epsilon * (1.0 - cfg.lambda);
    if (mode == Mode::multiplex) {
        target /= k;
    } else {
        target /= k * k * (static_cast<double>(layer_size) + 2.0);
    }
    const double te = std::ceil(std::log(target) / std::log(cfg.lambda));
    return te < 1.0 ? 1 : static_cast<std::size_t>(te);
}

PhasePlan plan_phases(const MultiNetwork& mn, const RwmConfig& cfg) {
    std::size_t te = 1;
    if (mn.mode() == Mode::multiplex) {
        te = split_time(cfg, mn.layer_count(), mn.layer(0).node_count(), Mode::multiplex);
    } else {
        for (const auto& l : mn.layers())
            te = std::max(te, split_time(cfg, mn.layer_count(), l.node_count(), Mode::general));
    }
    PhasePlan plan;
    plan.split_time = te;
    plan.phase2_max = cfg.max_iters > te ? cfg.max_iters - te : 0;
    return plan;
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::power_iteration: return "exact";
        case Strategy::early_stopping: return "a1";
        case Strategy::partial_update: return "a2";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "exact" || s == "poweriter") return Strategy::power_iteration;
    if (s == "a1") return Strategy::early_stopping;
    if (s == "a2") return Strategy::partial_update;
    throw InputError("unknown strategy '" + s + "' (expected exact, a1 or a2)");
}

double bfs_cover(const Network& net, std::span<const double> x, std::span<const NodeId> seeds,
                 double theta, std::vector<std::uint8_t>& marks, std::vector<NodeId>& queue,
                 std::vector<NodeId>& popped) {
    queue.clear();
    for (NodeId u : seeds) {
        if (!marks[u]) {
            marks[u] = 1;
            queue.push_back(u);
        }
    }
    double cover = 0.0;
    std::size_t head = 0;
    while (head < queue.size() && cover < theta) {
        const NodeId u = queue[head++];
        for (NodeId v : net.neighbors(u)) {
            if (!marks[v]) {
                marks[v] = 1;
                queue.push_back(v);
            }
        }
        popped.push_back(u);
        cover += x[u];
    }
    for (NodeId u : queue) marks[u] = 0;
    return cover;
}

PartialStepResult partial_step(const WalkerState& state, std::size_t i, const MultiNetwork& mn,
                               const RwmConfig& cfg) {
    Walker walker(mn, state, cfg);
    walker.advance_partial(cfg.theta, false);
    PartialStepResult r;
    r.next = walker.state().x[i].values;
    r.split.covered.assign(mn.layer(i).node_count(), 0.0);
    for (NodeId u : walker.last_popped(i)) r.split.covered[u] = state.x[i].values[u];
    r.split.covered_mass = walker.last_cover()[i].covered_mass;
    const auto popped = walker.last_popped(i);
    r.split.frontier_visited.assign(popped.begin(), popped.end());
    return r;
}

std::vector<std::size_t> visited_count(const WalkerState& state) {
    std::vector<std::size_t> out;
    out.reserve(state.x.size());
    for (const auto& x : state.x) {
        std::size_t c = 0;
        for (NodeId u : x.support)
            if (x.values[u] > 0.0) ++c;
        out.push_back(c);
    }
    return out;
}

namespace {

StrategyResult run_phased(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg,
                          Strategy strategy) {
    cfg.validate();
    StrategyResult result;
    result.plan = plan_phases(mn, cfg);
    Walker walker(mn, query, cfg);
    const bool partial = strategy == Strategy::partial_update;
    const bool freeze = strategy != Strategy::power_iteration;
    const std::size_t split = std::min(result.plan.split_time, cfg.max_iters);

    auto advance = [&](bool update) {
        return partial ? walker.advance_partial(cfg.theta, update) : walker.advance(update);
    };

    bool recorded = false;
    while (result.iterations < cfg.max_iters) {
        const bool phase1 = result.iterations < split;
        const double change = advance(!freeze || phase1);
        ++result.iterations;
        if (result.iterations == split) {
            result.visited_at_split = visited_count(walker.state());
            recorded = true;
        }
        // phase 1 always runs to the split time; the relevance is still moving
        if (!(freeze && phase1) && change < cfg.vector_tol) {
            result.converged = true;
            break;
        }
    }
    result.state = walker.release();
    if (!recorded) result.visited_at_split = visited_count(result.state);
    return result;
}

}  // namespace

StrategyResult run_strategy(const MultiNetwork& mn, const QuerySpec& query, const RwmConfig& cfg,
                            Strategy strategy) {
    return run_phased(mn, query, cfg, strategy);
}

StrategyResult run_two_phase(const MultiNetwork& mn, const QuerySpec& query,
                             const RwmConfig& cfg) {
    return run_phased(mn, query, cfg, Strategy::early_stopping);
}

}  // namespace rwm
