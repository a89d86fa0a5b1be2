#include "rwm/synthbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rwm/error.hpp"
#include "rwm/parallel.hpp"
#include "rwm/random.hpp"
#include "rwm/tasks.hpp"

namespace rwm {

namespace {

// Gap to the next success in a run of Bernoulli(p) trials.
std::uint64_t geometric_skip(Rng& rng, double log_q) {
    const double r = rng.uniform();
    const double skip = std::floor(std::log1p(-r) / log_q);
    if (!(skip < 1e18)) return std::numeric_limits<std::uint64_t>::max() / 4;
    return static_cast<std::uint64_t>(skip);
}

// All pairs {first + a, first + b}, b < a < size, each kept with probability p.
void sample_within(std::size_t first, std::size_t size, double p, Rng& rng,
                   std::vector<WeightedEdge>& out) {
    if (p <= 0.0 || size < 2) return;
    if (p >= 1.0) {
        for (std::size_t a = 1; a < size; ++a)
            for (std::size_t b = 0; b < a; ++b)
                out.push_back({static_cast<NodeId>(first + b), static_cast<NodeId>(first + a), 1.0});
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t a = 1;
    std::uint64_t b = 0;
    bool first_draw = true;
    for (;;) {
        const std::uint64_t gap = geometric_skip(rng, log_q) + (first_draw ? 0 : 1);
        first_draw = false;
        b += gap;
        while (a < size && b >= a) {
            b -= a;
            ++a;
        }
        if (a >= size) return;
        out.push_back({static_cast<NodeId>(first + b), static_cast<NodeId>(first + a), 1.0});
    }
}

// All pairs between two disjoint ranges, each kept with probability p.
void sample_between(std::size_t first_a, std::size_t size_a, std::size_t first_b,
                    std::size_t size_b, double p, Rng& rng, std::vector<WeightedEdge>& out) {
    if (p <= 0.0) return;
    const std::uint64_t cells = static_cast<std::uint64_t>(size_a) * size_b;
    if (p >= 1.0) {
        for (std::uint64_t c = 0; c < cells; ++c)
            out.push_back({static_cast<NodeId>(first_a + c / size_b),
                           static_cast<NodeId>(first_b + c % size_b), 1.0});
        return;
    }
    const double log_q = std::log1p(-p);
    std::uint64_t c = geometric_skip(rng, log_q);
    while (c < cells) {
        out.push_back({static_cast<NodeId>(first_a + c / size_b),
                       static_cast<NodeId>(first_b + c % size_b), 1.0});
        const std::uint64_t gap = geometric_skip(rng, log_q);
        if (gap >= cells) break;
        c += 1 + gap;
    }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

PlantedGraph generate_base(const PlantedPartitionSpec& spec) {
    if (spec.num_communities < 1 || spec.n < spec.num_communities)
        throw InputError("planted partition needs n >= num_communities >= 1");
    if (!(spec.mixing >= 0.0 && spec.mixing < 1.0)) throw InputError("mixing must lie in [0, 1)");
    if (!(spec.avg_degree > 0.0 && spec.avg_degree < static_cast<double>(spec.n)))
        throw InputError("avg_degree must lie in (0, n)");
    if (spec.n > std::numeric_limits<NodeId>::max()) throw InputError("too many nodes");

    const std::size_t n = spec.n;
    const std::size_t c = spec.num_communities;
    std::vector<std::size_t> start(c + 1);
    for (std::size_t b = 0; b <= c; ++b) start[b] = b * n / c;

    const double block = static_cast<double>(n) / static_cast<double>(c);
    const double p_in = block > 1.0 ? spec.avg_degree * (1.0 - spec.mixing) / (block - 1.0) : 0.0;
    const double outside = static_cast<double>(n) - block;
    const double p_out = outside > 0.0 ? spec.avg_degree * spec.mixing / outside : 0.0;
    if (p_in > 1.0 || p_out > 1.0) {
        std::ostringstream msg;
        msg << "infeasible planted partition: edge probabilities " << p_in << " (within) and "
            << p_out << " (between) for avg_degree " << spec.avg_degree;
        throw InputError(msg.str());
    }
    if (c == 1 && spec.mixing > 0.0 && p_in == 0.0) throw InputError("infeasible planted partition");

    Rng rng(spec.seed);
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(spec.avg_degree * static_cast<double>(n) / 2.0 * 1.1));
    for (std::size_t a = 0; a < c; ++a) {
        sample_within(start[a], start[a + 1] - start[a], p_in, rng, edges);
        for (std::size_t b = a + 1; b < c; ++b)
            sample_between(start[a], start[a + 1] - start[a], start[b], start[b + 1] - start[b],
                           p_out, rng, edges);
    }

    PlantedGraph g;
    g.network = Network::from_edges(n, edges);
    g.labels.resize(n);
    for (std::size_t b = 0; b < c; ++b)
        std::fill(g.labels.begin() + static_cast<std::ptrdiff_t>(start[b]),
                  g.labels.begin() + static_cast<std::ptrdiff_t>(start[b + 1]),
                  static_cast<std::uint32_t>(b));
    return g;
}

MultiNetwork derive_layers(const Network& base, const LayerDerivation& d) {
    if (d.layers < 1) throw InputError("at least one layer is required");
    if (!(d.keep_ratio > 0.0 && d.keep_ratio <= 1.0)) throw InputError("keep_ratio must lie in (0, 1]");
    const auto edges = base.edges();
    std::vector<Network> layers;
    layers.reserve(d.layers);
    std::vector<WeightedEdge> kept;
    for (std::size_t k = 0; k < d.layers; ++k) {
        Rng rng(mix(d.seed, k));
        kept.clear();
        for (const auto& e : edges)
            if (d.keep_ratio >= 1.0 || rng.bernoulli(d.keep_ratio)) kept.push_back(e);
        layers.push_back(Network::from_edges(base.node_count(), kept));
    }
    return MultiNetwork::multiplex(std::move(layers));
}

BenchReport run_benchmark(const BenchPlan& plan, const RwmConfig& cfg) {
    cfg.validate();
    if (plan.trials < 1 || plan.repetitions < 1) throw InputError("trials and repetitions must be positive");
    BenchReport report;
    for (std::size_t inst = 0; inst < plan.instances.size(); ++inst) {
        const auto& spec = plan.instances[inst];
        const PlantedGraph g = generate_base(spec.base);
        const MultiNetwork mn = derive_layers(g.network, spec.layers);
        const Network& layer0 = mn.layer(0);

        // query nodes: uniform over nodes with an edge in the query layer
        std::vector<NodeId> queries;
        Rng rng(mix(plan.seed, inst));
        for (std::size_t attempts = 0; queries.size() < plan.trials; ++attempts) {
            if (attempts > 1000 * plan.trials) throw InputError("query layer has no edges");
            const auto u = static_cast<NodeId>(rng.below(layer0.node_count()));
            if (!layer0.isolated(u)) queries.push_back(u);
        }

        for (Strategy strategy : plan.strategies) {
            BenchCell cell;
            cell.instance = inst;
            cell.n = spec.base.n;
            cell.layers = mn.layer_count();
            cell.strategy = strategy;
            cell.trials = plan.trials;
            std::vector<double> ms(plan.trials), iters(plan.trials), split(plan.trials),
                end(plan.trials), f1(plan.trials);
            parallel_for(plan.trials, plan.workers, [&](std::size_t trial) {
                const NodeId u = queries[trial];
                const QuerySpec query{0, {u}};
                std::vector<double> reps;
                StrategyResult result;
                for (std::size_t r = 0; r < plan.repetitions; ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    result = run_strategy(mn, query, cfg, strategy);
                    const auto t1 = std::chrono::steady_clock::now();
                    reps.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                }
                ms[trial] = median(std::move(reps));
                iters[trial] = static_cast<double>(result.iterations);
                split[trial] = static_cast<double>(result.visited_at_split[0]);
                end[trial] = static_cast<double>(result.state.x[0].visited());

                std::vector<NodeId> truth;
                for (NodeId v = 0; v < g.labels.size(); ++v)
                    if (g.labels[v] == g.labels[u]) truth.push_back(v);
                const auto community = sweep_cut(result.state.x[0].values, layer0, 0);
                f1[trial] = f1_score(community.members, truth);
            });
            cell.median_ms = median(ms);
            cell.mean_ms = mean(ms);
            cell.mean_iterations = mean(iters);
            cell.mean_visited_split = mean(split);
            cell.mean_visited_end = mean(end);
            cell.mean_f1 = mean(f1);
            cell.trial_ms = std::move(ms);
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

void write_report_json(std::ostream& os, const BenchReport& report, bool with_timing) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& c : report.cells) {
        nlohmann::ordered_json j;
        j["instance"] = c.instance;
        j["n"] = c.n;
        j["layers"] = c.layers;
        j["strategy"] = to_string(c.strategy);
        j["trials"] = c.trials;
        if (with_timing) {
            j["median_ms"] = c.median_ms;
            j["mean_ms"] = c.mean_ms;
            j["trial_ms"] = c.trial_ms;
        }
        j["mean_iterations"] = c.mean_iterations;
        j["mean_visited_split"] = c.mean_visited_split;
        j["mean_visited_end"] = c.mean_visited_end;
        j["mean_f1"] = c.mean_f1;
        cells.push_back(std::move(j));
    }
    nlohmann::ordered_json root;
    root["cells"] = std::move(cells);
    os << root.dump(2) << '\n';
}

void write_report_tsv(std::ostream& os, const BenchReport& report, bool with_timing) {
    os << "instance\tn\tlayers\tstrategy\ttrials";
    if (with_timing) os << "\tmedian_ms\tmean_ms";
    os << "\tmean_iterations\tmean_visited_split\tmean_visited_end\tmean_f1\n";
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::setprecision(10);
    for (const auto& c : report.cells) {
        os << c.instance << '\t' << c.n << '\t' << c.layers << '\t' << to_string(c.strategy) << '\t'
           << c.trials;
        if (with_timing) os << '\t' << c.median_ms << '\t' << c.mean_ms;
        os << '\t' << c.mean_iterations << '\t' << c.mean_visited_split << '\t'
           << c.mean_visited_end << '\t' << c.mean_f1 << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

}  // namespace rwm
