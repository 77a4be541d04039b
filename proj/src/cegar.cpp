#include "qsms/cegar.hpp"

#include <set>
#include <stdexcept>

#include "qsms/edge_vars.hpp"

namespace qsms {

namespace {

using Ref = Circuit::Ref;

void collect_conjuncts(const Circuit& c, Ref r, std::vector<Ref>& out) {
  const auto& nd = c.node(r.node);
  if (!r.negated && nd.kind == Circuit::Kind::And) {
    for (auto ch : nd.children) collect_conjuncts(c, ch, out);
  } else if (r.negated && nd.kind == Circuit::Kind::Or) {
    for (auto ch : nd.children) collect_conjuncts(c, ~ch, out);
  } else {
    out.push_back(r);
  }
}

bool mentions_any(const Circuit& c, const std::set<std::string, std::less<>>& names) {
  for (const auto& v : c.support()) {
    if (names.contains(v)) return true;
  }
  return false;
}

}  // namespace

StrippedQbf strip_existential_conjuncts(const Qbf& q) {
  StrippedQbf out;
  out.rest.free = q.free;
  out.rest.exists = q.exists;
  out.rest.forall = q.forall;

  std::vector<Ref> conjuncts;
  collect_conjuncts(q.matrix, q.matrix.output(), conjuncts);
  if (conjuncts.size() < 2) {
    out.rest.matrix = q.matrix;
    return out;
  }
  const std::set<std::string, std::less<>> universal(q.forall.begin(), q.forall.end());
  std::vector<Ref> kept;
  for (auto r : conjuncts) {
    Circuit part = q.matrix.extract(r);
    if (mentions_any(part, universal)) {
      kept.push_back(r);
    } else {
      out.existential_parts.push_back(std::move(part));
    }
  }
  Circuit& rest = out.rest.matrix;
  std::vector<Ref> imported;
  for (auto r : kept) imported.push_back(rest.import(q.matrix, r));
  if (imported.size() == 1) {
    rest.set_output(imported[0]);
  } else {
    rest.set_output(rest.make_and(std::move(imported)));
  }
  return out;
}

CegarSolver::CegarSolver(const Qbf& q, CegarOptions options) : options_(options) {
  q.validate();
  sat::SolverOptions sopts;
  sopts.seed = options.seed;
  first_ = std::make_unique<sat::Solver>(sopts);
  second_ = std::make_unique<sat::Solver>(sopts);
  enc1_ = std::make_unique<TseitinEncoder>(*first_);
  enc2_ = std::make_unique<TseitinEncoder>(*second_);

  outer_ = q.free;
  outer_.insert(outer_.end(), q.exists.begin(), q.exists.end());
  for (const auto& v : outer_) {
    enc1_->var(v);
    enc2_->var(v);
  }
  for (const auto& v : q.forall) enc2_->var(v);

  std::vector<Circuit> parts;
  if (options.strip) {
    auto stripped = strip_existential_conjuncts(q);
    parts = std::move(stripped.existential_parts);
    rest_ = std::move(stripped.rest);
  } else {
    rest_ = q;
  }
  for (const auto& part : parts) enc1_->assert_circuit(simplify(part));

  Assignment zeros;
  for (const auto& y : rest_.forall) zeros[y] = false;
  enc1_->assert_circuit(substitute(rest_.matrix, zeros));

  Circuit negated = rest_.matrix;
  negated.set_output(~negated.output());
  enc2_->assert_circuit(simplify(negated));

  if (options.sms) attach_symmetry_breaking();
}

void CegarSolver::attach_symmetry_breaking() {
  if (rest_.free.empty()) return;
  const auto n = edge_vertex_count(rest_.free);
  if (!n) throw std::invalid_argument("symmetry breaking needs the free variables to be exactly e_i_j for some n");
  n_ = *n;
  std::vector<sat::Var> cell_vars;  // lex index
  for (const auto& name : edge_vars(n_)) cell_vars.push_back(enc1_->var(name));
  auto varmap = [this, cell_vars](Cell c) {
    return cell_vars[static_cast<std::size_t>((c.i - 1) * (2 * n_ - c.i) / 2 + (c.j - c.i - 1))];
  };
  first_->set_admissibility_callback([this, varmap](const sat::ModelView& model) {
    ++stats_.sms_checks;
    PartialGraph g(n_, CellState::Absent);
    for (int i = 1; i <= n_; ++i) {
      for (int j = i + 1; j <= n_; ++j) {
        if (model.value(varmap(Cell{i, j}))) g.set(i, j, CellState::Present);
      }
    }
    const CellOrder ord(options_.order, n_);
    const auto verdict = check_partial(g, ord, options_.symmetry);
    if (verdict.canonical()) return sat::Admission::accept();
    ++stats_.sms_rejections;
    return sat::Admission::reject(violation_to_clause(*verdict.violation, varmap));
  });
}

std::optional<Assignment> CegarSolver::solve() {
  std::vector<sat::Lit> assumptions;
  while (true) {
    ++stats_.iterations;
    if (first_->solve() == sat::Result::Unsat) return std::nullopt;
    assumptions.clear();
    for (const auto& v : outer_) {
      assumptions.push_back(sat::Lit::make(*enc2_->find(v), first_->model_value(*enc1_->find(v))));
    }
    if (second_->solve(assumptions) == sat::Result::Unsat) {
      Assignment witness;
      for (const auto& v : outer_) witness[v] = first_->model_value(*enc1_->find(v));
      return witness;
    }
    Assignment beta;
    for (const auto& y : rest_.forall) beta[y] = second_->model_value(*enc2_->find(y));
    ++stats_.refinements;
    enc1_->assert_circuit(substitute(rest_.matrix, beta));
  }
}

EnumerationSummary CegarSolver::enumerate(std::uint64_t limit,
                                          const std::function<bool(const Assignment&)>& on_solution) {
  EnumerationSummary summary;
  while (true) {
    auto witness = solve();
    if (!witness) return summary;
    if (limit != 0 && summary.count == limit) {
      summary.complete = false;
      return summary;
    }
    Assignment solution;
    sat::Clause block;
    for (const auto& v : rest_.free) {
      const bool value = witness->at(v);
      solution[v] = value;
      block.push_back(sat::Lit::make(*enc1_->find(v), !value));
    }
    ++stats_.solutions;
    if (on_solution(solution)) ++summary.count;
    first_->add_clause(block);
  }
}

std::vector<Cell> ccl_refinement_view(int n, int colors, const Assignment& beta) {
  std::vector<std::uint64_t> palette(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    for (int i = 1; i <= colors; ++i) {
      auto it = beta.find("c_" + std::to_string(v) + "_" + std::to_string(i));
      if (it == beta.end()) throw std::invalid_argument("colouring misses variable for vertex " + std::to_string(v));
      if (it->second) palette[static_cast<std::size_t>(v)] |= std::uint64_t{1} << (i - 1);
    }
    if (palette[static_cast<std::size_t>(v)] == 0) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no colour");
    }
  }
  std::vector<Cell> out;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (palette[static_cast<std::size_t>(u)] & palette[static_cast<std::size_t>(v)]) out.push_back(Cell{u, v});
    }
  }
  return out;
}

}  // namespace qsms
