// Naming of edge variables e_i_j and conversion between assignments and graphs.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/graph.hpp"

namespace qsms {

/// "e_i_j" for the cell {u, v}.
std::string edge_var(int u, int v);
/// The cell named by an edge variable, if `name` has the form e_i_j, 1 <= i < j.
std::optional<Cell> parse_edge_var(std::string_view name);

/// Vertex count implied by a list of variable names: the largest vertex of an
/// edge variable, provided every e_i_j up to it is present and nothing else
/// is. Returns nullopt otherwise (an empty list gives nullopt too).
std::optional<int> edge_vertex_count(const std::vector<std::string>& names);

/// Edge variable names of K_n in lex cell order.
std::vector<std::string> edge_vars(int n);

Graph graph_from_assignment(int n, const Assignment& a);
Assignment assignment_from_graph(const Graph& g);

}  // namespace qsms
