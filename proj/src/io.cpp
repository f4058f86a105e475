#include "neteffect/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace neteffect {

namespace {

std::runtime_error parse_error(std::size_t line, const std::string& what) {
    return std::runtime_error("parse error at line " + std::to_string(line) + ": " + what);
}

bool is_blank_or_comment(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

NodeId parse_node_id(const std::string& token, std::size_t line) {
    NodeId value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || value < 0)
        throw parse_error(line, "expected a nonnegative integer node id, got '" + token + "'");
    return value;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::ofstream create_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create file: " + path);
    return out;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool dedupe, NodeId explicit_n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line, a, b, extra;
    std::size_t lineno = 0;
    NodeId max_id = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        std::istringstream fields(line);
        if (!(fields >> a >> b)) throw parse_error(lineno, "expected two node ids");
        if (fields >> extra) throw parse_error(lineno, "trailing data '" + extra + "'");
        NodeId u = parse_node_id(a, lineno);
        NodeId v = parse_node_id(b, lineno);
        if (explicit_n >= 0 && (u >= explicit_n || v >= explicit_n))
            throw parse_error(lineno, "node id exceeds declared node count");
        if (u == v) continue;  // simple graph: self-loops dropped
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
        max_id = std::max(max_id, v);
    }
    if (edges.empty()) throw std::runtime_error("edge list is empty");
    std::sort(edges.begin(), edges.end());
    const auto first_dup = std::adjacent_find(edges.begin(), edges.end());
    if (first_dup != edges.end()) {
        if (!dedupe)
            throw std::runtime_error("duplicate edge " + std::to_string(first_dup->first) + " " +
                                     std::to_string(first_dup->second));
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    const NodeId n = explicit_n >= 0 ? explicit_n : max_id + 1;
    return Graph::from_edges(n, edges);
}

Graph load_edge_list_file(const std::string& path, bool dedupe, NodeId explicit_n) {
    auto in = open_or_throw(path);
    return load_edge_list(in, dedupe, explicit_n);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (const NodeId v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    auto out = create_or_throw(path);
    write_edge_list(out, g);
}

LabelSet load_labels(std::istream& in, NodeId n) {
    LabelSet set;
    set.labels.assign(static_cast<std::size_t>(n), kUnlabeled);
    std::unordered_map<std::string, NodeId> name_to_id;
    std::string line;
    std::size_t lineno = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank_or_comment(line)) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw parse_error(lineno, "expected node<TAB>label");
        const NodeId node = parse_node_id(line.substr(0, tab), lineno);
        const std::string name = line.substr(tab + 1);
        if (name.empty()) throw parse_error(lineno, "empty label");
        if (node >= n)
            throw parse_error(lineno, "node id " + std::to_string(node) + " exceeds node count " +
                                          std::to_string(n));
        auto [it, inserted] = name_to_id.emplace(name, set.num_classes);
        if (inserted) {
            set.class_names.push_back(name);
            ++set.num_classes;
        }
        const NodeId cls = it->second;
        if (set.labels[node] != kUnlabeled && set.labels[node] != cls)
            throw parse_error(lineno, "conflicting labels for node " + std::to_string(node));
        set.labels[node] = cls;
        any = true;
    }
    if (!any) throw std::runtime_error("label file has no entries");
    if (set.num_classes < 2)
        throw std::runtime_error("need at least 2 classes, found " +
                                 std::to_string(set.num_classes));
    return set;
}

LabelSet load_labels_file(const std::string& path, NodeId n) {
    auto in = open_or_throw(path);
    return load_labels(in, n);
}

void write_labels(std::ostream& out, const LabelSet& labels) {
    for (std::size_t i = 0; i < labels.labels.size(); ++i)
        if (labels.labels[i] != kUnlabeled)
            out << i << '\t' << labels.class_names[labels.labels[i]] << '\n';
}

void write_labels_file(const std::string& path, const LabelSet& labels) {
    auto out = create_or_throw(path);
    write_labels(out, labels);
}

void write_predictions(std::ostream& out, const std::vector<NodeId>& predictions,
                       const LabelSet& labels) {
    for (std::size_t i = 0; i < predictions.size(); ++i)
        out << i << '\t' << labels.class_names[predictions[i]] << '\n';
}

void write_predictions_file(const std::string& path, const std::vector<NodeId>& predictions,
                            const LabelSet& labels) {
    auto out = create_or_throw(path);
    write_predictions(out, predictions, labels);
}

void write_weighted_matrix(std::ostream& out, const SparseWeightedMatrix& m) {
    out.precision(17);
    for (NodeId i = 0; i < m.n; ++i) {
        const auto cols = m.row_cols(i);
        const auto vals = m.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            out << i << ' ' << cols[k] << ' ' << vals[k] << '\n';
    }
}

}  // namespace neteffect
