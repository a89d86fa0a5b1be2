#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rwm/accel.hpp"
#include "rwm/engine.hpp"
#include "rwm/multinet.hpp"

namespace rwm {

struct PlantedPartitionSpec {
    std::size_t n = 1000;
    double avg_degree = 14.0;
    std::size_t num_communities = 2;
    double mixing = 0.1;  ///< expected fraction of a node's edges leaving its block
    std::uint64_t seed = 1;
};

struct PlantedGraph {
    Network network;
    std::vector<std::uint32_t> labels;  ///< block of every node
};

/// Planted-partition graph with near-equal blocks. Within- and between-block
/// edge probabilities are set so the expected degree is avg_degree and the
/// expected inter-block share is `mixing`. Throws InputError when infeasible.
PlantedGraph generate_base(const PlantedPartitionSpec& spec);

struct LayerDerivation {
    std::size_t layers = 3;
    double keep_ratio = 0.5;
    std::uint64_t seed = 1;
};

/// K independent edge subsamples of `base` as a multiplex network.
MultiNetwork derive_layers(const Network& base, const LayerDerivation& d);

struct BenchInstance {
    PlantedPartitionSpec base;
    LayerDerivation layers;
};

struct BenchPlan {
    std::vector<BenchInstance> instances;
    std::vector<Strategy> strategies{Strategy::power_iteration, Strategy::early_stopping,
                                     Strategy::partial_update};
    std::size_t trials = 10;       ///< random queries per instance
    std::size_t repetitions = 5;   ///< timed runs per query; the median is kept
    std::uint64_t seed = 1;
    std::size_t workers = 1;       ///< >1 runs trials in parallel (timings become unreliable)
};

struct BenchCell {
    std::size_t instance = 0;
    std::size_t n = 0;
    std::size_t layers = 0;
    Strategy strategy = Strategy::power_iteration;
    std::size_t trials = 0;
    double median_ms = 0.0;  ///< median over trials of the per-trial median
    double mean_ms = 0.0;
    double mean_iterations = 0.0;
    double mean_visited_split = 0.0;  ///< query layer, at T_e
    double mean_visited_end = 0.0;    ///< query layer, at the end
    double mean_f1 = 0.0;             ///< query layer community vs planted block
    std::vector<double> trial_ms;
};

struct BenchReport {
    std::vector<BenchCell> cells;
};

BenchReport run_benchmark(const BenchPlan& plan, const RwmConfig& cfg);

/// Timing fields are omitted when `with_timing` is false.
void write_report_json(std::ostream& os, const BenchReport& report, bool with_timing = true);
void write_report_tsv(std::ostream& os, const BenchReport& report, bool with_timing = true);

}  // namespace rwm
