// Counterexample-guided 2-QBF solving with optional dynamic symmetry breaking.
//
// Two incremental SAT solvers cooperate. The first holds an existential
// abstraction of the matrix, strengthened by instantiating the universal
// variables with every counterexample found so far. The second holds the
// negated matrix and, under assumptions fixing the existential and free
// variables, searches for a counterexample.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/graph.hpp"
#include "qsms/sat.hpp"
#include "qsms/symmetry.hpp"
#include "qsms/tseitin.hpp"

namespace qsms {

struct StrippedQbf {
  /// Conjuncts of the matrix that mention no universal variable.
  std::vector<Circuit> existential_parts;
  /// The same prefix with the remaining conjuncts as matrix.
  Qbf rest;
};

/// Splits top-level conjuncts (nested conjunctions are flattened) that do not
/// depend on universal variables. A matrix that is not a conjunction gives no
/// parts.
StrippedQbf strip_existential_conjuncts(const Qbf& q);

struct CegarOptions {
  /// Reject non-canonical graphs over the e_i_j free variables.
  bool sms = false;
  OrderKind order = OrderKind::Lex;
  SymmetryOptions symmetry;
  bool strip = true;
  std::uint64_t seed = 0;
};

struct CegarStats {
  std::uint64_t iterations = 0;
  std::uint64_t refinements = 0;
  std::uint64_t sms_checks = 0;
  std::uint64_t sms_rejections = 0;
  std::uint64_t solutions = 0;
};

struct EnumerationSummary {
  std::uint64_t count = 0;
  /// False when the limit stopped the enumeration before exhaustion.
  bool complete = true;
};

class CegarSolver {
 public:
  /// Throws std::invalid_argument for an ill-formed prefix, or when SMS is
  /// requested but the free variables are not exactly the edge variables of
  /// some K_n.
  CegarSolver(const Qbf& q, CegarOptions options = {});

  /// A witness over the free and existential variables when the QBF is true.
  std::optional<Assignment> solve();

  /// Calls `on_solution` with each solution restricted to the free variables
  /// and blocks it. The callback returns whether it kept the solution; only
  /// kept solutions count towards `limit` (0 means unlimited). Once the limit
  /// is reached one more solve decides whether the enumeration was complete.
  EnumerationSummary enumerate(std::uint64_t limit, const std::function<bool(const Assignment&)>& on_solution);

  const CegarStats& stats() const { return stats_; }
  const sat::Solver& abstraction_solver() const { return *first_; }
  const sat::Solver& counterexample_solver() const { return *second_; }
  /// Vertex count of the edge variables when SMS is active, 0 otherwise.
  int graph_order() const { return n_; }

 private:
  void attach_symmetry_breaking();

  CegarOptions options_;
  Qbf rest_;
  std::vector<std::string> outer_;  // free then existential variables
  std::unique_ptr<sat::Solver> first_;
  std::unique_ptr<sat::Solver> second_;
  std::unique_ptr<TseitinEncoder> enc1_;
  std::unique_ptr<TseitinEncoder> enc2_;
  CegarStats stats_;
  int n_ = 0;
};

/// Monochromatic pairs of a vertex colouring given as c_v_i variables
/// (v in 1..n, i in 1..colors): the pairs u < v sharing a colour. The clause
/// "some such pair is an edge" is exactly what refinement adds for this
/// counterexample in the colouring encodings. Throws std::invalid_argument if
/// some vertex has no colour.
std::vector<Cell> ccl_refinement_view(int n, int colors, const Assignment& beta);

}  // namespace qsms
