#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "neteffect/types.hpp"

namespace neteffect {

/// Parse a whitespace-separated "u v" edge list. '#' lines and blank lines are
/// ignored. Self-loops are dropped. With dedupe, repeated edges (in either
/// direction) are merged; without it they raise an error. explicit_n < 0
/// means "infer n as max id + 1".
Graph load_edge_list(std::istream& in, bool dedupe = true, NodeId explicit_n = -1);
Graph load_edge_list_file(const std::string& path, bool dedupe = true, NodeId explicit_n = -1);

/// One "u v" line per undirected edge, u < v, sorted. Inverse of load_edge_list.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

/// Parse "node<TAB>label" lines. Labels are remapped to contiguous ids in
/// first-seen order; nodes absent from the file stay unlabeled.
LabelSet load_labels(std::istream& in, NodeId n);
LabelSet load_labels_file(const std::string& path, NodeId n);

void write_labels(std::ostream& out, const LabelSet& labels);
void write_labels_file(const std::string& path, const LabelSet& labels);

/// "node<TAB>label" lines for every node, using the original label names.
void write_predictions(std::ostream& out, const std::vector<NodeId>& predictions,
                       const LabelSet& labels);
void write_predictions_file(const std::string& path, const std::vector<NodeId>& predictions,
                            const LabelSet& labels);

/// "i j weight" triples of the stored entries, one line per directed entry.
void write_weighted_matrix(std::ostream& out, const SparseWeightedMatrix& m);

}  // namespace neteffect
