// The searchable problem families: their encodings, the oracle predicate
// each encoding is meant to capture, and the post-filters applied before
// reporting.

#pragma once

#include <string>
#include <string_view>

#include "qsms/circuit.hpp"
#include "qsms/encoders.hpp"
#include "qsms/graph.hpp"

namespace qsms {

enum class Family { None, TriangleFree, Folkman, Domination, Treewidth, Snark, KochenSpecker };

struct ProblemSpec {
  Family family = Family::None;
  int n = 1;
  /// Chromatic target for triangle-free (0 = no colouring part), clique
  /// size for Folkman, treewidth for Treewidth.
  int k = 0;
  bool maximal = false;
  DominationVariant variant = DominationVariant::ThreeConnected;
  /// Treewidth only: keep the critical graphs.
  bool critical = false;
};

std::string_view to_string(Family f);
/// Accepts the family names used on the command line: none, triangle-free,
/// folkman, domination, treewidth, snark, kochen-specker. The alias
/// "triangle-free-non-<m>-col" sets k = m + 1 in `spec`.
Family parse_family(std::string_view text, ProblemSpec* spec = nullptr);

/// Throws std::invalid_argument for parameters the family does not accept.
void validate(const ProblemSpec& spec);

Qbf encode_problem(const ProblemSpec& spec);

/// What the encoding alone admits, decided by the oracle.
bool encoding_predicate(const ProblemSpec& spec, const Graph& g);
/// Extra conditions checked after solving: 2-connectivity for snarks,
/// 3-connectivity for the 3conn domination variant, and criticality for
/// treewidth when requested.
bool post_filter(const ProblemSpec& spec, const Graph& g);
/// encoding_predicate and post_filter together.
bool family_predicate(const ProblemSpec& spec, const Graph& g);

/// Treewidth k, no isolated vertex, and every single edge deletion or
/// contraction lowers the treewidth.
bool is_treewidth_critical(const Graph& g, int k);

}  // namespace qsms
