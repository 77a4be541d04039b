// Circuit-to-CNF translation with structural hashing.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/sat.hpp"

namespace qsms {

/// Binds circuit variables to solver variables by name and remembers every
/// gate it has defined, so structurally identical subcircuits share one
/// solver literal across calls.
class TseitinEncoder {
 public:
  explicit TseitinEncoder(sat::Solver& sink) : sink_(sink) {}

  /// The solver variable for `name`, created on first use.
  sat::Var var(std::string_view name);
  std::optional<sat::Var> find(std::string_view name) const;

  /// A literal equivalent to `root` of `c`; defining clauses are emitted only
  /// for gates not seen before.
  sat::Lit encode(const Circuit& c, Circuit::Ref root);
  sat::Lit encode(const Circuit& c) { return encode(c, c.output()); }

  /// Asserts the circuit output as a unit.
  void assert_circuit(const Circuit& c) { sink_.add_clause({encode(c)}); }

  /// A literal fixed to true by a unit clause (created lazily).
  sat::Lit true_lit();

  sat::Solver& solver() { return sink_; }
  std::size_t gates_defined() const { return and_gates_.size(); }

 private:
  /// Literal for the conjunction of `lits`, after local simplification.
  sat::Lit make_and(std::vector<sat::Lit> lits);

  sat::Solver& sink_;
  std::unordered_map<std::string, sat::Var> vars_;
  std::map<std::vector<sat::Lit>, sat::Lit> and_gates_;
  std::optional<sat::Lit> true_;
};

}  // namespace qsms
