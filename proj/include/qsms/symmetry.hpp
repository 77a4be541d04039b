// Canonicity checks for fully and partially defined graphs.
//
// A graph is canonical when its matrix vector (upper-triangle cells in the
// chosen CellOrder) is lexicographically minimal over all vertex
// permutations. A failed check yields a witness permutation together with
// the cells consulted while comparing, which is enough to exclude every
// graph agreeing with those cells.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qsms/graph.hpp"
#include "qsms/sat.hpp"

namespace qsms {

struct SymmetryOptions {
  /// Cap on permutation-search nodes per call; 0 means unlimited. Hitting the
  /// cap reports the graph as canonical, which never excludes a canonical graph.
  std::uint64_t node_limit = 0;
};

struct Violation {
  /// apply_permutation(g, witness) has a strictly smaller matrix vector.
  Permutation witness;
  /// Cell states that certify the violation for every extension agreeing on them.
  std::vector<std::pair<Cell, CellState>> consulted;
};

struct MinimalityVerdict {
  std::optional<Violation> violation;

  bool canonical() const { return !violation.has_value(); }
};

bool is_canonical(const Graph& g, const CellOrder& ord, const SymmetryOptions& options = {});

/// A permutation producing a strictly smaller copy of g, if any exists.
std::optional<Permutation> find_smaller_copy(const Graph& g, const CellOrder& ord,
                                             const SymmetryOptions& options = {});

/// The isomorphic copy of g with the smallest matrix vector.
Graph canonical_form(const Graph& g, const CellOrder& ord);

/// Sound on partial inputs and complete on fully defined ones: a comparison
/// chain that reaches an Undefined cell on either side is abandoned.
MinimalityVerdict check_partial(const PartialGraph& g, const CellOrder& ord,
                                const SymmetryOptions& options = {});

/// Recomputes the consulted cells for a known witness. Returns nullopt if the
/// witness does not certify a violation on g.
std::optional<Violation> certify_violation(const PartialGraph& g, const CellOrder& ord,
                                           const Permutation& witness);

/// Negation of the consulted-cell conjunction: Present cells contribute a
/// negative edge literal, Absent cells a positive one.
sat::Clause violation_to_clause(const Violation& v, const std::function<sat::Var(Cell)>& varmap);

}  // namespace qsms
