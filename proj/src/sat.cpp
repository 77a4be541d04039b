#include "qsms/sat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsms::sat {

namespace {

// Finite subsequences of the Luby sequence: 1 1 2 1 1 2 4 1 1 2 ...
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double result = 1;
  for (int i = 0; i < seq; ++i) result *= y;
  return result;
}

}  // namespace

Solver::Solver(SolverOptions options) : options_(options), rng_(options.seed) {}

Solver::~Solver() = default;

Var Solver::new_var() {
  const auto v = static_cast<Var>(assigns_.size());
  assigns_.push_back(Value::Undef);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  polarity_.push_back(false);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

// ---------------------------------------------------------------------------
// Clause database

Solver::ClauseRef Solver::store_clause(std::vector<Lit> lits, bool learnt) {
  ClauseRef cref;
  if (!free_slots_.empty()) {
    cref = free_slots_.back();
    free_slots_.pop_back();
    clauses_[cref] = ClauseData{std::move(lits), 0.0F, learnt, false};
  } else {
    cref = static_cast<ClauseRef>(clauses_.size());
    clauses_.push_back(ClauseData{std::move(lits), 0.0F, learnt, false});
  }
  if (learnt) learnts_.push_back(cref);
  return cref;
}

void Solver::attach(ClauseRef cref) {
  const auto& lits = clauses_[cref].lits;
  watches_[(~lits[0]).code()].push_back({cref, lits[1]});
  watches_[(~lits[1]).code()].push_back({cref, lits[0]});
}

void Solver::remove_clause(ClauseRef cref) {
  auto& c = clauses_[cref];
  c.deleted = true;
  c.lits.clear();
  c.lits.shrink_to_fit();
}

bool Solver::locked(ClauseRef cref) const {
  const auto& c = clauses_[cref];
  const Var v = c.lits[0].var();
  return reasons_[v] == cref && value(c.lits[0]) == Value::True;
}

bool Solver::add_clause(std::span<const Lit> input) {
  if (!ok_) return false;
  std::vector<Lit> lits(input.begin(), input.end());
  for (auto l : lits) {
    if (l.var() >= num_vars()) throw std::invalid_argument("clause references unknown variable");
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t k = 1; k < lits.size(); ++k) {
    if (lits[k] == ~lits[k - 1]) return true;  // tautology
  }
  std::vector<Lit> kept;
  kept.reserve(lits.size());
  for (auto l : lits) {
    const Value v = value(l);
    if (v == Value::True) return true;
    if (v == Value::Undef) kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    root_units_.push_back(kept[0]);
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  const ClauseRef cref = store_clause(std::move(kept), false);
  attach(cref);
  ++num_original_;
  return true;
}

// ---------------------------------------------------------------------------
// Propagation

void Solver::enqueue(Lit l, ClauseRef reason) {
  const Var v = l.var();
  assigns_[v] = l.is_negative() ? Value::False : Value::True;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

Solver::ClauseRef Solver::propagate() {
  ClauseRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[p.code()];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i];
      if (value(w.blocker) == Value::True) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& lits = clauses_[w.cref].lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == Value::True) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[(~lits[1]).code()].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == Value::False) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

// ---------------------------------------------------------------------------
// Conflict analysis

void Solver::analyze(ClauseRef confl, std::vector<Lit>& out_learnt, int& out_btlevel) {
  int path_count = 0;
  Lit p = kUndefLit;
  out_learnt.clear();
  out_learnt.push_back(kUndefLit);
  auto index = static_cast<std::ptrdiff_t>(trail_.size()) - 1;

  do {
    auto& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = (p == kUndefLit ? 0 : 1); k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const Var v = q.var();
      if (!seen_[v] && level(v) > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (level(v) >= decision_level()) {
          ++path_count;
        } else {
          out_learnt.push_back(q);
        }
      }
    }
    while (!seen_[trail_[static_cast<std::size_t>(index)].var()]) --index;
    p = trail_[static_cast<std::size_t>(index)];
    --index;
    confl = reasons_[p.var()];
    seen_[p.var()] = 0;
    --path_count;
  } while (path_count > 0);
  out_learnt[0] = ~p;

  // Drop literals implied by the rest of the clause (one-step minimisation).
  analyze_toclear_.assign(out_learnt.begin(), out_learnt.end());
  std::size_t kept = 1;
  for (std::size_t k = 1; k < out_learnt.size(); ++k) {
    const Var v = out_learnt[k].var();
    const ClauseRef r = reasons_[v];
    bool redundant = r != kNoReason;
    if (redundant) {
      const auto& rc = clauses_[r].lits;
      for (std::size_t m = 1; m < rc.size(); ++m) {
        const Var u = rc[m].var();
        if (!seen_[u] && level(u) > 0) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant) out_learnt[kept++] = out_learnt[k];
  }
  out_learnt.resize(kept);

  if (out_learnt.size() == 1) {
    out_btlevel = 0;
  } else {
    std::size_t max_k = 1;
    for (std::size_t k = 2; k < out_learnt.size(); ++k) {
      if (level(out_learnt[k].var()) > level(out_learnt[max_k].var())) max_k = k;
    }
    std::swap(out_learnt[1], out_learnt[max_k]);
    out_btlevel = level(out_learnt[1].var());
  }
  for (auto l : analyze_toclear_) seen_[l.var()] = 0;
}

void Solver::cancel_until(int target) {
  if (decision_level() <= target) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(target)]);
  for (std::size_t k = trail_.size(); k-- > stop;) {
    const Var v = trail_[k].var();
    polarity_[v] = assigns_[v] == Value::True;
    assigns_[v] = Value::Undef;
    reasons_[v] = kNoReason;
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(target));
  qhead_ = trail_.size();
}

bool Solver::handle_conflict(ClauseRef confl) {
  ++stats_.conflicts;
  if (decision_level() == 0) {
    ok_ = false;
    return false;
  }
  std::vector<Lit> learnt;
  int bt = 0;
  analyze(confl, learnt, bt);
  cancel_until(bt);
  if (learnt.size() == 1) {
    enqueue(learnt[0], kNoReason);
  } else {
    const Lit asserting = learnt[0];
    const ClauseRef cref = store_clause(std::move(learnt), true);
    attach(cref);
    bump_clause(clauses_[cref]);
    enqueue(asserting, cref);
  }
  var_inc_ /= options_.var_decay;
  clause_inc_ /= options_.clause_decay;
  return true;
}

Solver::ClauseRef Solver::install_rejection(Clause clause, bool& unsat) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (auto l : clause) {
    if (l.var() >= num_vars() || value(l) != Value::False) {
      throw std::logic_error("admissibility callback rejected a model with a clause the model satisfies");
    }
  }
  if (clause.empty()) {
    unsat = true;
    return kNoReason;
  }
  std::stable_sort(clause.begin(), clause.end(),
                   [this](Lit a, Lit b) { return level(a.var()) > level(b.var()); });
  const int top = level(clause[0].var());
  if (top == 0) {
    unsat = true;
    return kNoReason;
  }
  if (clause.size() == 1) {
    root_units_.push_back(clause[0]);
    cancel_until(0);
    enqueue(clause[0], kNoReason);
    return kNoReason;
  }
  const int second = level(clause[1].var());
  const ClauseRef cref = store_clause(std::move(clause), false);
  attach(cref);
  ++num_original_;
  if (second < top) {
    cancel_until(second);
    enqueue(clauses_[cref].lits[0], cref);
    return kNoReason;
  }
  cancel_until(top);
  return cref;
}

// ---------------------------------------------------------------------------
// Activities and the decision heap

void Solver::bump_var(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::bump_clause(ClauseData& c) {
  c.activity += static_cast<float>(clause_inc_);
  if (c.activity > 1e20F) {
    for (auto cref : learnts_) clauses_[cref].activity *= 1e-20F;
    clause_inc_ *= 1e-20;
  }
}

void Solver::reduce_db() {
  std::vector<ClauseRef> candidates = learnts_;
  std::stable_sort(candidates.begin(), candidates.end(), [this](ClauseRef a, ClauseRef b) {
    const auto& ca = clauses_[a];
    const auto& cb = clauses_[b];
    if ((ca.lits.size() > 2) != (cb.lits.size() > 2)) return ca.lits.size() > 2;
    return ca.activity < cb.activity;
  });
  const std::size_t half = candidates.size() / 2;
  std::vector<ClauseRef> kept;
  bool removed_any = false;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const ClauseRef cref = candidates[k];
    if (k < half && clauses_[cref].lits.size() > 2 && !locked(cref)) {
      remove_clause(cref);
      removed_any = true;
    } else {
      kept.push_back(cref);
    }
  }
  if (!removed_any) return;
  for (auto& ws : watches_) {
    std::erase_if(ws, [this](const Watcher& w) { return clauses_[w.cref].deleted; });
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (clauses_[candidates[k]].deleted) free_slots_.push_back(candidates[k]);
  }
  std::sort(kept.begin(), kept.end());
  learnts_ = std::move(kept);
}

void Solver::heap_insert(Var v) {
  heap_index_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

namespace {
inline bool heap_before(const std::vector<double>& act, Var a, Var b) {
  return act[a] > act[b] || (act[a] == act[b] && a < b);
}
}  // namespace

void Solver::heap_up(std::size_t pos) {
  const Var v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_before(activity_, v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_index_[heap_[pos]] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const Var v = heap_[pos];
  const std::size_t size = heap_.size();
  while (2 * pos + 1 < size) {
    std::size_t child = 2 * pos + 1;
    if (child + 1 < size && heap_before(activity_, heap_[child + 1], heap_[child])) ++child;
    if (!heap_before(activity_, heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_index_[heap_[pos]] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[v] = static_cast<int>(pos);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_index_[top] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last] = 0;
    heap_down(0);
  }
  return top;
}

Lit Solver::pick_branch() {
  if (options_.random_branch_freq > 0.0 && !heap_.empty()) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < options_.random_branch_freq) {
      std::uniform_int_distribution<std::size_t> pick(0, heap_.size() - 1);
      const Var v = heap_[pick(rng_)];
      if (assigns_[v] == Value::Undef) return Lit::make(v, polarity_[v]);
    }
  }
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[v] == Value::Undef) return Lit::make(v, polarity_[v]);
  }
  return kUndefLit;
}

// ---------------------------------------------------------------------------
// Search

Solver::SearchStatus Solver::search(std::int64_t conflict_budget, std::span<const Lit> assumptions) {
  std::int64_t conflicts = 0;
  for (;;) {
    const ClauseRef confl = propagate();
    if (confl != kNoReason) {
      ++conflicts;
      if (!handle_conflict(confl)) return SearchStatus::Unsat;
      continue;
    }
    if (conflict_budget >= 0 && conflicts >= conflict_budget) {
      cancel_until(0);
      return SearchStatus::Restart;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_db();
    }

    Lit next = kUndefLit;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      const Value v = value(a);
      if (v == Value::True) {
        new_decision_level();
      } else if (v == Value::False) {
        return SearchStatus::Unsat;
      } else {
        next = a;
        break;
      }
    }
    if (next == kUndefLit) {
      ++stats_.decisions;
      next = pick_branch();
      if (next == kUndefLit) {
        if (!callback_) return SearchStatus::Sat;
        ++stats_.callback_calls;
        Admission verdict = callback_(ModelView(assigns_));
        if (verdict.accepted) return SearchStatus::Sat;
        ++stats_.callback_rejections;
        bool unsat = false;
        const ClauseRef conflict = install_rejection(std::move(verdict.clause), unsat);
        if (unsat) {
          ok_ = false;
          return SearchStatus::Unsat;
        }
        if (conflict != kNoReason) {
          ++conflicts;
          if (!handle_conflict(conflict)) return SearchStatus::Unsat;
        }
        continue;
      }
    }
    new_decision_level();
    enqueue(next, kNoReason);
  }
}

Result Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  model_.clear();
  if (!ok_) return Result::Unsat;
  for (auto a : assumptions) {
    if (a.var() >= num_vars()) throw std::invalid_argument("assumption references unknown variable");
  }
  const double floor = static_cast<double>(num_original_) / 3.0 + 2000.0;
  if (max_learnts_ < floor) max_learnts_ = floor;

  SearchStatus status = SearchStatus::Restart;
  int restarts = 0;
  while (status == SearchStatus::Restart) {
    const auto budget = static_cast<std::int64_t>(luby(2.0, restarts) * options_.restart_base);
    status = search(budget, assumptions);
    if (status == SearchStatus::Restart) {
      ++restarts;
      ++stats_.restarts;
      max_learnts_ *= 1.05;
    }
  }
  if (status == SearchStatus::Sat) model_ = assigns_;
  cancel_until(0);
  return status == SearchStatus::Sat ? Result::Sat : Result::Unsat;
}

std::string Solver::to_dimacs() const {
  std::ostringstream out;
  std::size_t count = root_units_.size();
  for (const auto& c : clauses_) {
    if (!c.deleted && !c.learnt) ++count;
  }
  out << "p cnf " << num_vars() << ' ' << count << '\n';
  for (auto l : root_units_) out << l.to_dimacs() << " 0\n";
  for (const auto& c : clauses_) {
    if (c.deleted || c.learnt) continue;
    for (auto l : c.lits) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace qsms::sat
