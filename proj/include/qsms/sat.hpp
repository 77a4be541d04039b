// A compact incremental CDCL SAT solver.
//
// Two-watched-literal propagation, first-UIP learning with local clause
// minimisation, VSIDS branching with phase saving, Luby restarts and
// activity-based learnt clause deletion. Assumptions are decided first,
// one per decision level. An optional admissibility callback inspects every
// total model and may reject it with a clause the model falsifies.

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qsms::sat {

using Var = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;
  static constexpr Lit positive(Var v) { return Lit(v << 1); }
  static constexpr Lit negative(Var v) { return Lit((v << 1) | 1U); }
  static constexpr Lit make(Var v, bool value) { return value ? positive(v) : negative(v); }
  static constexpr Lit from_code(std::uint32_t code) { return Lit(code); }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool is_negative() const { return code_ & 1U; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1U); }

  /// DIMACS-style signed integer (variables numbered from 1).
  int to_dimacs() const {
    const int v = static_cast<int>(var()) + 1;
    return is_negative() ? -v : v;
  }

  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  constexpr explicit Lit(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = std::numeric_limits<std::uint32_t>::max();
};

inline constexpr Lit kUndefLit{};

using Clause = std::vector<Lit>;

enum class Value : std::uint8_t { False = 0, True = 1, Undef = 2 };

enum class Result { Sat, Unsat };

/// Read-only view of the total assignment handed to the admissibility callback.
class ModelView {
 public:
  explicit ModelView(std::span<const Value> values) : values_(values) {}
  bool value(Var v) const { return values_[v] == Value::True; }
  bool value(Lit l) const { return value(l.var()) != l.is_negative(); }
  std::size_t size() const { return values_.size(); }

 private:
  std::span<const Value> values_;
};

struct Admission {
  bool accepted = true;
  Clause clause;  // meaningful only when rejected; must be falsified by the model

  static Admission accept() { return {}; }
  static Admission reject(Clause c) { return {false, std::move(c)}; }
};

using AdmissibilityCallback = std::function<Admission(const ModelView&)>;

struct SolverOptions {
  double var_decay = 0.95;
  double clause_decay = 0.999;
  int restart_base = 100;
  /// Probability of a random decision; 0 keeps the search fully deterministic
  /// without consulting the generator at all.
  double random_branch_freq = 0.0;
  std::uint64_t seed = 0;
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t callback_calls = 0;
  std::uint64_t callback_rejections = 0;
};

class Solver {
 public:
  explicit Solver(SolverOptions options = {});
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;
  Solver(Solver&&) = default;
  Solver& operator=(Solver&&) = default;
  ~Solver();

  Var new_var();
  std::size_t num_vars() const { return assigns_.size(); }

  /// Conjoins a clause. Duplicate literals are merged and tautologies are
  /// ignored. Returns false once the database is known to be unsatisfiable
  /// (e.g. after adding the empty clause); that state is permanent.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Result solve(std::span<const Lit> assumptions = {});
  Result solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Value in the last model found by solve().
  bool model_value(Var v) const { return model_[v] == Value::True; }
  bool model_value(Lit l) const { return model_value(l.var()) != l.is_negative(); }
  const std::vector<Value>& model() const { return model_; }

  void set_admissibility_callback(AdmissibilityCallback callback) { callback_ = std::move(callback); }

  bool okay() const { return ok_; }
  std::size_t num_clauses() const { return num_original_; }
  std::size_t num_learnts() const { return learnts_.size(); }
  const SolverStats& stats() const { return stats_; }

  /// Original clauses and root-level units in DIMACS CNF.
  std::string to_dimacs() const;

 private:
  using ClauseRef = std::uint32_t;
  static constexpr ClauseRef kNoReason = std::numeric_limits<ClauseRef>::max();

  struct ClauseData {
    std::vector<Lit> lits;
    float activity = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };

  Value value(Lit l) const {
    const Value v = assigns_[l.var()];
    if (v == Value::Undef) return v;
    return static_cast<Value>(static_cast<std::uint8_t>(v) ^ static_cast<std::uint8_t>(l.is_negative()));
  }
  int level(Var v) const { return levels_[v]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  ClauseRef store_clause(std::vector<Lit> lits, bool learnt);
  void attach(ClauseRef cref);
  void remove_clause(ClauseRef cref);
  bool locked(ClauseRef cref) const;

  void enqueue(Lit l, ClauseRef reason);
  ClauseRef propagate();
  void analyze(ClauseRef confl, std::vector<Lit>& out_learnt, int& out_btlevel);
  void cancel_until(int level);
  Lit pick_branch();
  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

  enum class SearchStatus { Sat, Unsat, Restart };
  SearchStatus search(std::int64_t conflict_budget, std::span<const Lit> assumptions);
  bool handle_conflict(ClauseRef confl);
  /// Installs a callback clause falsified by the current total assignment.
  /// Returns the conflict to analyse, or kNoReason if handled directly.
  ClauseRef install_rejection(Clause clause, bool& unsat);

  void bump_var(Var v);
  void bump_clause(ClauseData& c);
  void reduce_db();

  // Binary heap over variable activity.
  void heap_insert(Var v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  Var heap_pop();
  bool heap_contains(Var v) const { return heap_index_[v] >= 0; }

  SolverOptions options_;
  SolverStats stats_;
  bool ok_ = true;

  std::vector<ClauseData> clauses_;
  std::vector<ClauseRef> free_slots_;
  std::vector<ClauseRef> learnts_;
  std::size_t num_original_ = 0;
  std::vector<Lit> root_units_;

  std::vector<std::vector<Watcher>> watches_;  // indexed by literal code
  std::vector<Value> assigns_;
  std::vector<int> levels_;
  std::vector<ClauseRef> reasons_;
  std::vector<bool> polarity_;  // saved phase; true = assign positive
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<Var> heap_;
  std::vector<int> heap_index_;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  double max_learnts_ = 0;

  std::vector<Lit> analyze_toclear_;

  std::vector<Value> model_;
  AdmissibilityCallback callback_;
  std::mt19937_64 rng_;
};

}  // namespace qsms::sat
