#include "rwm/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rwm/error.hpp"

namespace rwm {

namespace {

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ": " << what;
    throw LoadError(msg.str());
}

std::vector<std::string> split_fields(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string field;
    while (in >> field) out.push_back(field);
    return out;
}

template <class T>
bool parse_number(const std::string& s, T& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_double(const std::string& s, double& out) {
    // from_chars for floating point is missing in older libstdc++ builds
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::size_t check_range(const EdgeRecords& rec, std::size_t n_from, std::size_t n_to) {
    for (std::size_t k = 0; k < rec.edges.size(); ++k) {
        const auto& e = rec.edges[k];
        if (e.u >= n_from || e.v >= n_to) {
            std::ostringstream msg;
            msg << "node index out of range (" << e.u << ", " << e.v << "); valid ranges are [0, "
                << n_from << ") and [0, " << n_to << ")";
            fail_line(rec.line_numbers[k], msg.str());
        }
    }
    return rec.edges.size();
}

}  // namespace

EdgeRecords read_edge_records(std::istream& in) {
    EdgeRecords rec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields[0] == "%nodes") {
            std::size_t n = 0;
            if (fields.size() != 2 || !parse_number(fields[1], n))
                fail_line(lineno, "expected '%nodes N'");
            rec.declared_nodes = n;
            continue;
        }
        if (fields.size() < 2 || fields.size() > 3)
            fail_line(lineno, "expected 'u v [w]', got " + std::to_string(fields.size()) + " fields");
        NodeId u = 0;
        NodeId v = 0;
        double w = 1.0;
        if (!parse_number(fields[0], u) || !parse_number(fields[1], v))
            fail_line(lineno, "node indices must be non-negative integers");
        if (fields.size() == 3 && !parse_double(fields[2], w)) fail_line(lineno, "bad weight");
        if (!(w > 0.0)) fail_line(lineno, "weight must be positive, got " + fields[2]);
        rec.edges.push_back({u, v, w});
        rec.line_numbers.push_back(lineno);
    }
    return rec;
}

Network load_edge_list(std::istream& in, std::size_t node_count) {
    const auto rec = read_edge_records(in);
    check_range(rec, node_count, node_count);
    return Network::from_edges(node_count, rec.edges);
}

Network read_layer_file(std::istream& in) {
    const auto rec = read_edge_records(in);
    std::size_t n = 0;
    if (rec.declared_nodes) {
        n = *rec.declared_nodes;
    } else {
        for (const auto& e : rec.edges) n = std::max<std::size_t>(n, std::max(e.u, e.v) + 1);
    }
    check_range(rec, n, n);
    return Network::from_edges(n, rec.edges);
}

Network read_layer_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open layer file " + path.string());
    try {
        return read_layer_file(in);
    } catch (const LoadError& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
}

std::pair<CrossTransition, CrossTransition> load_cross_edges(std::istream& in, std::size_t i,
                                                             const Network& net_i, std::size_t j,
                                                             const Network& net_j) {
    const auto rec = read_edge_records(in);
    check_range(rec, net_i.node_count(), net_j.node_count());
    return make_cross_pair(i, net_i, j, net_j, rec.edges);
}

void write_edge_list(std::ostream& out, const Network& net) {
    out << "%nodes " << net.node_count() << '\n';
    const auto old = out.precision(17);
    for (const auto& e : net.edges()) out << e.u << '\t' << e.v << '\t' << e.w << '\n';
    out.precision(old);
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open manifest " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(path.string() + ": invalid JSON: " + e.what());
    }
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };
    Manifest m;
    try {
        m.mode = mode_from_string(doc.value("mode", std::string("multiplex")));
        for (const auto& l : doc.at("layers")) m.layers.push_back(resolve(l.get<std::string>()));
        if (doc.contains("cross")) {
            for (const auto& c : doc.at("cross"))
                m.cross.push_back({c.at("from").get<std::size_t>(), c.at("to").get<std::size_t>(),
                                   resolve(c.at("file").get<std::string>())});
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(path.string() + ": " + e.what());
    } catch (const InputError& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
    if (m.layers.empty()) throw LoadError(path.string() + ": no layers listed");
    if (m.mode == Mode::multiplex && !m.cross.empty())
        throw LoadError(path.string() + ": multiplex manifests take no cross files");
    return m;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    const auto base = path.parent_path();
    auto rel = [&](const std::filesystem::path& p) {
        return base.empty() ? p.generic_string() : p.lexically_relative(base).generic_string();
    };
    nlohmann::json doc;
    doc["mode"] = to_string(manifest.mode);
    doc["layers"] = nlohmann::json::array();
    for (const auto& l : manifest.layers) doc["layers"].push_back(rel(l));
    if (!manifest.cross.empty()) {
        doc["cross"] = nlohmann::json::array();
        for (const auto& c : manifest.cross)
            doc["cross"].push_back({{"from", c.from}, {"to", c.to}, {"file", rel(c.file)}});
    }
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write manifest " + path.string());
    out << std::setw(2) << doc << '\n';
}

MultiNetwork load_manifest(const std::filesystem::path& path) {
    const auto m = read_manifest(path);
    std::vector<Network> layers;
    for (const auto& l : m.layers) layers.push_back(read_layer_file(l));
    if (m.mode == Mode::multiplex) return MultiNetwork::multiplex(std::move(layers));
    std::vector<CrossTransition> cross;
    for (const auto& c : m.cross) {
        if (c.from >= layers.size() || c.to >= layers.size() || c.from == c.to)
            throw LoadError(path.string() + ": cross file " + c.file.string() +
                            " names invalid layers");
        std::ifstream in(c.file);
        if (!in) throw LoadError("cannot open cross file " + c.file.string());
        try {
            auto [ij, ji] = load_cross_edges(in, c.from, layers[c.from], c.to, layers[c.to]);
            cross.push_back(std::move(ij));
            cross.push_back(std::move(ji));
        } catch (const LoadError& e) {
            throw LoadError(c.file.string() + ": " + e.what());
        }
    }
    return MultiNetwork::general(std::move(layers), std::move(cross));
}

}  // namespace rwm
