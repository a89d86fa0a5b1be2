#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "rwm/multinet.hpp"

namespace rwm {

/// Parsed `u<TAB>v<TAB>w` lines. `#` starts a comment; `%nodes N` declares
/// the node count. Any whitespace separates fields; a missing weight is 1.
struct EdgeRecords {
    std::vector<WeightedEdge> edges;
    std::vector<std::size_t> line_numbers;  ///< 1-based, parallel to edges
    std::optional<std::size_t> declared_nodes;
};

/// Throws LoadError (with the line number) on malformed lines or w <= 0.
EdgeRecords read_edge_records(std::istream& in);

/// Throws LoadError naming the line of the first out-of-range endpoint.
Network load_edge_list(std::istream& in, std::size_t node_count);

/// Node count from `%nodes` if present, else the largest index + 1.
Network read_layer_file(std::istream& in);
Network read_layer_file(const std::filesystem::path& path);

std::pair<CrossTransition, CrossTransition> load_cross_edges(std::istream& in, std::size_t i,
                                                             const Network& net_i, std::size_t j,
                                                             const Network& net_j);

/// Writes `%nodes N` and every undirected edge once.
void write_edge_list(std::ostream& out, const Network& net);

struct Manifest {
    struct CrossFile {
        std::size_t from;
        std::size_t to;
        std::filesystem::path file;
    };
    Mode mode = Mode::multiplex;
    std::vector<std::filesystem::path> layers;
    std::vector<CrossFile> cross;
};

/// JSON: {"mode": "multiplex"|"general", "layers": [...], "cross": [{"from", "to", "file"}]}.
/// Relative paths are resolved against the manifest's directory.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
MultiNetwork load_manifest(const std::filesystem::path& path);

}  // namespace rwm
