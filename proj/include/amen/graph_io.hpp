#pragma once

#include <string>
#include <string_view>

#include "amen/graph.hpp"

namespace amen {

enum class GraphFormat { EdgeList, Graph6 };

/// Parses the edge-list text format: optional '#' comment lines, a header line
/// "n m", then m lines "u v" with 0-based endpoints.
Graph parse_edge_list(std::string_view text, EdgeListReport* report = nullptr);
std::string write_edge_list(const Graph& g);

/// graph6 per McKay's format description. Short (n <= 62) and both long
/// forms are accepted, as are an optional ">>graph6<<" header and trailing
/// newline.
Graph decode_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

/// ".g6" / ".graph6" select graph6, anything else is an edge list.
GraphFormat format_from_path(std::string_view path);

Graph parse_graph(std::string_view text, GraphFormat format, EdgeListReport* report = nullptr);

}  // namespace amen
