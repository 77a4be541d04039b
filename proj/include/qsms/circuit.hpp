// And/or circuits over named variables, and the 2-QBF container built on them.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qsms {

/// Partial or total map from variable names to truth values.
using Assignment = std::map<std::string, bool, std::less<>>;

class Circuit {
 public:
  enum class Kind : std::uint8_t { True, Var, And, Or };

  /// A possibly negated reference to a node.
  struct Ref {
    std::uint32_t node = 0;
    bool negated = false;

    Ref operator~() const { return Ref{node, !negated}; }
    friend auto operator<=>(const Ref&, const Ref&) = default;
  };

  struct Node {
    Kind kind = Kind::True;
    std::uint32_t var = 0;  // index into var names when kind == Var
    std::vector<Ref> children;
  };

  /// A circuit whose output is the constant true.
  Circuit();

  static Ref constant(bool value) { return Ref{0, !value}; }
  static bool is_constant(Ref r) { return r.node == 0; }
  static bool constant_value(Ref r) { return !r.negated; }

  /// The node for `name`, created on first use.
  Ref var(std::string_view name);
  std::optional<Ref> find_var(std::string_view name) const;

  /// Children must already exist (nodes are kept in topological order).
  Ref make_and(std::vector<Ref> children);
  Ref make_or(std::vector<Ref> children);

  void set_output(Ref r);
  Ref output() const { return output_; }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::uint32_t index) const { return nodes_[index]; }
  std::size_t num_vars() const { return var_names_.size(); }
  const std::string& var_name(std::uint32_t var) const { return var_names_[var]; }
  std::optional<std::uint32_t> var_index(std::string_view name) const;

  /// Marks the nodes in the cone of `root`.
  std::vector<bool> reachable(Ref root) const;
  std::vector<bool> reachable() const { return reachable(output_); }
  /// Names of the variables in the output cone, in declaration order.
  std::vector<std::string> support() const;

  /// A compact copy containing only the cone of `root`, which becomes the output.
  Circuit extract(Ref root) const;
  /// Copies the cone of `root` from `other`, matching variables by name.
  Ref import(const Circuit& other, Ref root);

 private:
  Ref add_gate(Kind kind, std::vector<Ref> children);

  std::vector<Node> nodes_;
  std::vector<std::string> var_names_;
  std::vector<std::uint32_t> var_nodes_;
  std::unordered_map<std::string, std::uint32_t> var_lookup_;
  Ref output_;
};

/// Per-variable value: -1 unassigned, 0 false, 1 true (indexed by Circuit var).
using TernaryValues = std::vector<std::int8_t>;

TernaryValues ternary_values(const Circuit& c, const Assignment& a);

/// Drops constant children, collapses empty gates to constants, replaces
/// unary gates by their input, merges duplicate children and folds a gate
/// holding a literal and its complement. Keeps only the output cone.
Circuit simplify(const Circuit& c);

/// c with the assigned variables replaced by constants, then simplified.
Circuit substitute(const Circuit& c, const Assignment& a);
Circuit substitute(const Circuit& c, const TernaryValues& values);

/// Requires every variable in the output cone to be assigned.
bool evaluate(const Circuit& c, const Assignment& a);
/// Three-valued evaluation: -1 when the output is not yet determined.
int evaluate_ternary(const Circuit& c, const TernaryValues& values);

/// Two-level prenex QBF  free ∃X ∀Y. matrix, with free variables outermost.
struct Qbf {
  std::vector<std::string> free;
  std::vector<std::string> exists;
  std::vector<std::string> forall;
  Circuit matrix;

  /// Throws std::invalid_argument if blocks overlap, repeat a name, or miss
  /// a variable of the matrix.
  void validate() const;
};

}  // namespace qsms
