#include "rwm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwm/accel.hpp"
#include "rwm/engine.hpp"
#include "rwm/error.hpp"
#include "rwm/io.hpp"
#include "rwm/multinet.hpp"
#include "rwm/synthbench.hpp"
#include "rwm/tasks.hpp"

namespace rwm::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Common {
    RwmConfig cfg;
    std::string mode = "a2";
    std::string format = "json";
    std::size_t workers = 1;
    std::uint64_t seed = 0;

    Strategy strategy() const { return strategy_from_string(mode); }
};

void add_walk_flags(CLI::App* sub, Common& c) {
    sub->add_option("--alpha", c.cfg.alpha, "continuation probability (1 - alpha restarts)");
    sub->add_option("--lambda", c.cfg.lambda, "decay of relevance increments");
    sub->add_option("--epsilon", c.cfg.epsilon, "tolerance that fixes the split time");
    sub->add_option("--theta", c.cfg.theta, "covering factor of partial updates");
    sub->add_option("--max-iters", c.cfg.max_iters, "iteration cap");
    sub->add_option("--tol", c.cfg.vector_tol, "L1 convergence tolerance");
    sub->add_option("--mode", c.mode, "exact, a1 or a2")
        ->check(CLI::IsMember({"exact", "poweriter", "a1", "a2"}));
}

void add_output_flags(CLI::App* sub, Common& c, const std::string& default_format) {
    c.format = default_format;
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
}

std::vector<std::pair<NodeId, double>> ranking(const ScoreVector& x) {
    std::vector<std::pair<NodeId, double>> r;
    r.reserve(x.values.size());
    for (std::size_t u = 0; u < x.values.size(); ++u) r.emplace_back(static_cast<NodeId>(u), x.values[u]);
    std::stable_sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return r;
}

// Shortest representation that reads back to the same double.
std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void warn_validation(const MultiNetwork& mn, std::ostream& err) {
    for (const auto& m : validate(mn).messages()) err << "warning: " << m << '\n';
}

// ---------------------------------------------------------------------------

struct QueryArgs {
    std::string manifest;
    std::size_t layer = 0;
    std::vector<NodeId> nodes;
};

int cmd_query(const QueryArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    c.cfg.validate();
    const auto strategy = c.strategy();
    const MultiNetwork mn = load_manifest(a.manifest);
    warn_validation(mn, err);
    const QuerySpec query{a.layer, a.nodes};
    query.validate(mn);
    const auto communities = detect_local_communities(mn, query, c.cfg, strategy);
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& com : communities)
            arr.push_back({{"layer", com.layer},
                           {"members", com.members},
                           {"conductance", com.conductance},
                           {"prefix_len", com.prefix_len}});
        out << arr.dump(2) << '\n';
    } else {
        out << "layer\tconductance\tprefix_len\tmembers\n";
        for (const auto& com : communities) {
            out << com.layer << '\t' << num(com.conductance) << '\t' << com.prefix_len << '\t';
            for (std::size_t m = 0; m < com.members.size(); ++m) out << (m ? "," : "") << com.members[m];
            out << '\n';
        }
    }
    return ok;
}

int cmd_rank(const QueryArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    c.cfg.validate();
    const auto strategy = c.strategy();
    const MultiNetwork mn = load_manifest(a.manifest);
    warn_validation(mn, err);
    const QuerySpec query{a.layer, a.nodes};
    query.validate(mn);
    const auto result = run_strategy(mn, query, c.cfg, strategy);
    if (!result.converged) err << "warning: stopped at the iteration cap before converging\n";
    if (c.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < result.state.x.size(); ++i) {
            json rows = json::array();
            for (const auto& [u, s] : ranking(result.state.x[i])) rows.push_back({{"node", u}, {"score", s}});
            arr.push_back({{"layer", i}, {"ranking", std::move(rows)}});
        }
        out << arr.dump(2) << '\n';
    } else {
        out << "layer\tnode\tscore\n";
        for (std::size_t i = 0; i < result.state.x.size(); ++i)
            for (const auto& [u, s] : ranking(result.state.x[i])) out << i << '\t' << u << '\t' << num(s) << '\n';
    }
    return ok;
}

struct LinkArgs {
    std::string manifest;
    std::size_t target = 0;
    double remove = 0.3;
    std::size_t k = 100;
};

int cmd_linkpred(const LinkArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    c.cfg.validate();
    const auto strategy = c.strategy();
    if (a.k < 1) throw InputError("--k must be at least 1");
    const MultiNetwork mn = load_manifest(a.manifest);
    warn_validation(mn, err);
    const auto split = remove_probe_edges(mn, a.target, a.remove, c.seed);
    const auto ranked = predict_links(split.reduced, a.target, c.cfg, a.k, strategy, c.workers);
    const double precision = precision_at_k(ranked, split.probe, a.k);
    if (c.format == "json") {
        json pairs = json::array();
        for (const auto& p : ranked.pairs)
            pairs.push_back({{"u", p.u}, {"v", p.v}, {"score", p.score}, {"probe", split.probe.contains({p.u, p.v})}});
        json doc = {{"target", a.target},
                    {"k", a.k},
                    {"probe_edges", split.probe.size()},
                    {"precision_at_k", precision},
                    {"pairs", std::move(pairs)}};
        out << doc.dump(2) << '\n';
    } else {
        out << "# precision@" << a.k << '\t' << num(precision) << '\n';
        out << "u\tv\tscore\n";
        for (const auto& p : ranked.pairs) out << p.u << '\t' << p.v << '\t' << num(p.score) << '\n';
    }
    return ok;
}

struct SampleArgs {
    std::string manifest;
    std::size_t target = 0;
    SamplerParams params;
    double p = 0.0;
    double q = 0.0;
};

int cmd_sample(SampleArgs a, const Common& c, std::ostream& out, std::ostream& err) {
    c.cfg.validate();
    const auto strategy = c.strategy();
    if (a.p > 0.0) a.params.p = a.p;
    if (a.q > 0.0) a.params.q = a.q;
    a.params.seed = c.seed;
    const MultiNetwork mn = load_manifest(a.manifest);
    warn_validation(mn, err);
    const auto corpus = sample_contexts(mn, a.target, c.cfg, a.params, strategy, c.workers);
    if (c.format == "json") {
        json doc = {{"layer", corpus.layer}, {"walks", corpus.walks}};
        out << doc.dump() << '\n';
    } else {
        // one walk per line, space separated
        for (const auto& w : corpus.walks) {
            for (std::size_t s = 0; s < w.size(); ++s) out << (s ? " " : "") << w[s];
            out << '\n';
        }
    }
    return ok;
}

struct GenArgs {
    std::string out_dir;
    PlantedPartitionSpec base;
    LayerDerivation layers;
};

int cmd_gen(GenArgs a, const Common& c, std::ostream& out, std::ostream&) {
    a.base.seed = c.seed;
    a.layers.seed = c.seed + 1;
    const auto g = generate_base(a.base);
    const auto mn = derive_layers(g.network, a.layers);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    Manifest manifest;
    manifest.mode = Mode::multiplex;
    json edges = json::array();
    for (std::size_t i = 0; i < mn.layer_count(); ++i) {
        const fs::path file = dir / ("layer" + std::to_string(i) + ".tsv");
        std::ofstream f(file);
        if (!f) throw LoadError("cannot write " + file.string());
        write_edge_list(f, mn.layer(i));
        manifest.layers.push_back(file);
        edges.push_back(mn.layer(i).edge_count());
    }
    {
        std::ofstream f(dir / "labels.tsv");
        if (!f) throw LoadError("cannot write " + (dir / "labels.tsv").string());
        for (std::size_t u = 0; u < g.labels.size(); ++u) f << u << '\t' << g.labels[u] << '\n';
    }
    const fs::path manifest_path = dir / "manifest.json";
    write_manifest(manifest_path, manifest);
    if (c.format == "json") {
        json doc = {{"manifest", manifest_path.string()},
                    {"nodes", a.base.n},
                    {"base_edges", g.network.edge_count()},
                    {"layer_edges", std::move(edges)}};
        out << doc.dump(2) << '\n';
    } else {
        out << manifest_path.string() << '\n';
    }
    return ok;
}

struct BenchArgs {
    std::vector<std::size_t> sizes{10000};
    PlantedPartitionSpec base{.n = 10000, .avg_degree = 7.0};
    LayerDerivation layers;
    std::vector<std::string> strategies{"exact", "a1", "a2"};
    std::size_t trials = 10;
    std::size_t repetitions = 5;
    bool no_timing = false;
};

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    c.cfg.validate();
    BenchPlan plan;
    plan.trials = a.trials;
    plan.repetitions = a.repetitions;
    plan.seed = c.seed;
    plan.workers = c.workers;
    plan.strategies.clear();
    for (const auto& s : a.strategies) plan.strategies.push_back(strategy_from_string(s));
    for (std::size_t n : a.sizes) {
        BenchInstance inst{a.base, a.layers};
        inst.base.n = n;
        inst.base.seed = c.seed;
        inst.layers.seed = c.seed + 1;
        plan.instances.push_back(inst);
    }
    if (c.workers > 1 && !a.no_timing) err << "warning: timings from parallel trials are unreliable\n";
    const auto report = run_benchmark(plan, c.cfg);
    if (c.format == "json") {
        write_report_json(out, report, !a.no_timing);
    } else {
        write_report_tsv(out, report, !a.no_timing);
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random walks on multiple networks: local communities, ranking, link prediction, "
                 "context sampling and synthetic benchmarks."};
    app.name(args.empty() ? "rwm" : fs::path(args.front()).filename().string());
    app.require_subcommand(1);

    Common common;
    QueryArgs qa;
    LinkArgs la;
    SampleArgs sa;
    GenArgs ga;
    BenchArgs ba;

    auto* query = app.add_subcommand("query", "local communities around query nodes, one per layer");
    auto* rank = app.add_subcommand("rank", "per-layer visiting probabilities, sorted descending");
    for (auto* sub : {query, rank}) {
        sub->add_option("manifest", qa.manifest, "dataset manifest (JSON)")->required();
        sub->add_option("--layer", qa.layer, "query layer");
        sub->add_option("--node", qa.nodes, "query node (repeatable)")->required();
    }
    add_walk_flags(query, common);
    add_walk_flags(rank, common);
    add_output_flags(query, common, "json");

    auto* linkpred = app.add_subcommand("linkpred", "hide probe edges and rank unconnected pairs");
    linkpred->add_option("manifest", la.manifest, "dataset manifest (JSON)")->required();
    linkpred->add_option("--target", la.target, "target layer");
    linkpred->add_option("--remove", la.remove, "fraction of target edges moved to the probe set");
    linkpred->add_option("--k", la.k, "number of predicted pairs");
    add_walk_flags(linkpred, common);

    auto* sample = app.add_subcommand("sample", "random-walk contexts on the frozen transition");
    sample->add_option("manifest", sa.manifest, "dataset manifest (JSON)")->required();
    sample->add_option("--target", sa.target, "target layer");
    sample->add_option("--walk-length", sa.params.walk_length, "transitions per walk");
    sample->add_option("--walks-per-node", sa.params.walks_per_node, "walks started at every node");
    auto* p_opt = sample->add_option("--p", sa.p, "return parameter")->check(CLI::PositiveNumber);
    auto* q_opt = sample->add_option("--q", sa.q, "in-out parameter")->check(CLI::PositiveNumber);
    p_opt->needs(q_opt);
    q_opt->needs(p_opt);
    add_walk_flags(sample, common);

    auto* gen = app.add_subcommand("gen", "write a planted-partition multiplex dataset");
    gen->add_option("--out", ga.out_dir, "output directory")->required();
    gen->add_option("--n", ga.base.n, "nodes");
    gen->add_option("--avg-degree", ga.base.avg_degree, "expected degree of the base graph");
    gen->add_option("--communities", ga.base.num_communities, "planted blocks");
    gen->add_option("--mixing", ga.base.mixing, "expected share of inter-block edges");
    gen->add_option("--layers", ga.layers.layers, "number of layers");
    gen->add_option("--keep", ga.layers.keep_ratio, "edge retention per layer");

    auto* bench = app.add_subcommand("bench", "time exact, a1 and a2 on synthetic multiplex networks");
    bench->add_option("--sizes", ba.sizes, "node counts, one instance each")->delimiter(',');
    bench->add_option("--avg-degree", ba.base.avg_degree, "expected degree of the base graph");
    bench->add_option("--communities", ba.base.num_communities, "planted blocks");
    bench->add_option("--mixing", ba.base.mixing, "expected share of inter-block edges");
    bench->add_option("--layers", ba.layers.layers, "number of layers");
    bench->add_option("--keep", ba.layers.keep_ratio, "edge retention per layer");
    bench->add_option("--strategies", ba.strategies, "subset of exact,a1,a2")
        ->delimiter(',')
        ->check(CLI::IsMember({"exact", "poweriter", "a1", "a2"}));
    bench->add_option("--trials", ba.trials, "random queries per instance");
    bench->add_option("--repetitions", ba.repetitions, "timed runs per query");
    bench->add_flag("--no-timing", ba.no_timing, "omit wall-clock fields");
    add_walk_flags(bench, common);

    // `rank` and `sample` default to tsv; json is the default elsewhere
    add_output_flags(rank, common, "json");
    for (auto* sub : {linkpred, sample, gen, bench}) add_output_flags(sub, common, "json");
    for (auto* sub : {query, rank, linkpred, sample, gen, bench}) {
        sub->add_option("--seed", common.seed, "random seed");
        sub->add_option("--workers", common.workers, "worker threads")->check(CLI::PositiveNumber);
    }

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend());
        if (!rest.empty()) rest.pop_back();
        app.parse(std::move(rest));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    const bool tsv_default = (rank->parsed() || sample->parsed());
    if (tsv_default) {
        auto* sub = rank->parsed() ? rank : sample;
        if (sub->get_option("--format")->count() == 0) common.format = "tsv";
    }

    try {
        if (query->parsed()) return cmd_query(qa, common, out, err);
        if (rank->parsed()) return cmd_rank(qa, common, out, err);
        if (linkpred->parsed()) return cmd_linkpred(la, common, out, err);
        if (sample->parsed()) return cmd_sample(sa, common, out, err);
        if (gen->parsed()) return cmd_gen(ga, common, out, err);
        if (bench->parsed()) return cmd_bench(ba, common, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const InitError& e) {
        err << "error: layer " << e.layer() << ": " << e.what() << '\n';
        return data_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return data_error;
    }
    return usage_error;
}

}  // namespace rwm::cli
