// QBF encodings of the graph-search families and of static minimality.
//
// Every encoding has the shape  free e  ∃X ∀Y. F(e, X) ∧ ¬H(e, X, Y)  where
// the free block holds the edge variables e_i_j of K_n in lex order.

#pragma once

#include <string>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/graph.hpp"

namespace qsms {

/// Circuit over e_i_j and universal <prefix>_i_j (vertex i is sent to j) that
/// is true for every permutation exactly when the edge variables describe a
/// canonical graph under `ord`.
Circuit encode_qstatic_minimality(const CellOrder& ord, const std::string& perm_prefix = "p");
/// Names of the permutation variables used by encode_qstatic_minimality.
std::vector<std::string> qstatic_perm_vars(int n, const std::string& perm_prefix = "p");

/// Conjoins the minimality circuit to the matrix and appends its permutation
/// variables to the universal block, choosing a fresh prefix on name clashes.
Qbf augment_with_qstatic(const Qbf& q, const CellOrder& ord);

/// The unconstrained instance: every graph on n vertices.
Qbf encode_unconstrained(int n);

/// Triangle-free graphs that are not (k-1)-colourable; k = 0 drops the
/// colouring part. With `maximal`, adding any edge must create a triangle.
Qbf encode_triangle_free(int n, int k, bool maximal = false);

/// K_k-free graphs every 2-colouring of whose edges has a monochromatic triangle.
Qbf encode_folkman(int n, int k);

enum class DominationVariant { ThreeConnected, Bipartite, Girth6 };

std::string_view to_string(DominationVariant v);
DominationVariant parse_domination_variant(std::string_view text);

/// Cubic graphs (plus the variant restriction) whose domination number
/// exceeds ceil(n/3).
Qbf encode_domination(int n, DominationVariant variant);

/// Graphs of treewidth exactly k, 1 <= k < n.
Qbf encode_treewidth_exact(int n, int k);

/// Connected cubic graphs of girth at least 5 without a 3-edge-colouring.
Qbf encode_snark(int n);

/// Square-free graphs with minimum degree 3, every vertex on a triangle,
/// 4-colourable, and without a 010-colouring.
Qbf encode_kochen_specker(int n);

}  // namespace qsms
