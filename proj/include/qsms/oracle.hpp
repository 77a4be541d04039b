// Brute-force reference implementations of graph properties, canonical
// forms and QBF truth. Nothing here calls the solver or the symmetry search;
// these functions are the ground truth the rest is tested against.
//
// Resource guards throw std::invalid_argument instead of truncating.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/graph.hpp"

namespace qsms::oracle {

using GraphPredicate = std::function<bool(const Graph&)>;

/// The minimal matrix vector over all n! relabellings, as a graph. n <= 9.
Graph canonical_form(const Graph& g, OrderKind kind = OrderKind::Lex);

/// The canonical member of every isomorphism class on n vertices that
/// satisfies `keep`, in increasing matrix-vector order. n <= 8.
std::vector<Graph> enumerate_canonical(int n, OrderKind kind = OrderKind::Lex, const GraphPredicate& keep = {});

/// Backtracking isomorphism test.
bool isomorphic(const Graph& a, const Graph& b);

/// One representative per isomorphism class of cubic graphs on n vertices
/// (connected only when asked). n <= 14.
std::vector<Graph> enumerate_cubic(int n, bool connected_only = false);

bool is_properly_k_colorable(const Graph& g, int k);
int chromatic_number(const Graph& g);
bool is_3_edge_colorable(const Graph& g);
int min_dominating_set_size(const Graph& g);
/// Exact treewidth by dynamic programming over vertex subsets; n <= 16.
int treewidth(const Graph& g);
/// Exhaustive over 2^n colourings: no adjacent 0-0 pair, no all-1 triangle. n <= 24.
bool is_010_colorable(const Graph& g);
/// Every 2-colouring of the edges has a monochromatic triangle; |E| <= 24.
bool folkman_check(const Graph& g);
bool has_clique(const Graph& g, int k);
bool is_maximal_triangle_free(const Graph& g);

struct ConnectivityReport {
  bool connected = false;
  bool two_connected = false;
  bool three_connected = false;
  /// Length of a shortest cycle; 0 for forests.
  int girth = 0;
  bool cubic = false;
  bool bipartite = false;
  bool square_free = false;
  bool triangle_free = false;
  bool every_vertex_on_triangle = false;
  int min_degree = 0;
  int max_degree = 0;
};

ConnectivityReport connectivity_report(const Graph& g);

/// Truth of the QBF after fixing the free variables; at most 30 remaining
/// quantified variables.
bool qbf_truth_bruteforce(const Qbf& q, const Assignment& free_assignment);

/// Graph with edge {u, v} deleted, or contracted into u (loops and parallel
/// edges dropped, the vertex v removed and later vertices shifted down).
Graph delete_edge(const Graph& g, int u, int v);
Graph contract_edge(const Graph& g, int u, int v);

}  // namespace qsms::oracle
