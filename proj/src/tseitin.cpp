#include "qsms/tseitin.hpp"

#include <algorithm>

namespace qsms {

using sat::Lit;

sat::Var TseitinEncoder::var(std::string_view name) {
  auto [it, inserted] = vars_.try_emplace(std::string(name), 0);
  if (inserted) it->second = sink_.new_var();
  return it->second;
}

std::optional<sat::Var> TseitinEncoder::find(std::string_view name) const {
  auto it = vars_.find(std::string(name));
  if (it == vars_.end()) return std::nullopt;
  return it->second;
}

Lit TseitinEncoder::true_lit() {
  if (!true_) {
    true_ = Lit::positive(sink_.new_var());
    sink_.add_clause({*true_});
  }
  return *true_;
}

Lit TseitinEncoder::make_and(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  if (true_) {
    if (std::binary_search(lits.begin(), lits.end(), ~*true_)) return ~*true_;
    std::erase(lits, *true_);
  }
  for (std::size_t m = 1; m < lits.size(); ++m) {
    if (lits[m].var() == lits[m - 1].var()) return ~true_lit();
  }
  if (lits.empty()) return true_lit();
  if (lits.size() == 1) return lits[0];

  if (auto it = and_gates_.find(lits); it != and_gates_.end()) return it->second;
  const Lit g = Lit::positive(sink_.new_var());
  std::vector<Lit> big{g};
  for (Lit l : lits) {
    sink_.add_clause({~g, l});
    big.push_back(~l);
  }
  sink_.add_clause(big);
  and_gates_.emplace(std::move(lits), g);
  return g;
}

Lit TseitinEncoder::encode(const Circuit& c, Circuit::Ref root) {
  const auto live = c.reachable(root);
  std::vector<Lit> map(c.size());
  if (live[0]) map[0] = true_lit();
  std::vector<Lit> kids;
  for (std::uint32_t k = 1; k < c.size(); ++k) {
    if (!live[k]) continue;
    const auto& nd = c.node(k);
    if (nd.kind == Circuit::Kind::Var) {
      map[k] = Lit::positive(var(c.var_name(nd.var)));
      continue;
    }
    // An Or is the negated And of its negated children.
    const bool is_or = nd.kind == Circuit::Kind::Or;
    kids.clear();
    for (auto ch : nd.children) {
      const Lit l = ch.negated ? ~map[ch.node] : map[ch.node];
      kids.push_back(is_or ? ~l : l);
    }
    const Lit g = make_and(kids);
    map[k] = is_or ? ~g : g;
  }
  return root.negated ? ~map[root.node] : map[root.node];
}

}  // namespace qsms
