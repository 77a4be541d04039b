#include "qsms/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qsms {

using Ref = Circuit::Ref;

Circuit::Circuit() {
  nodes_.push_back(Node{Kind::True, 0, {}});
  output_ = constant(true);
}

Ref Circuit::var(std::string_view name) {
  if (auto it = var_lookup_.find(std::string(name)); it != var_lookup_.end()) {
    return Ref{var_nodes_[it->second], false};
  }
  if (name.empty()) throw std::invalid_argument("empty variable name");
  const auto index = static_cast<std::uint32_t>(var_names_.size());
  const auto node = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{Kind::Var, index, {}});
  var_names_.emplace_back(name);
  var_nodes_.push_back(node);
  var_lookup_.emplace(std::string(name), index);
  return Ref{node, false};
}

std::optional<Ref> Circuit::find_var(std::string_view name) const {
  auto index = var_index(name);
  if (!index) return std::nullopt;
  return Ref{var_nodes_[*index], false};
}

std::optional<std::uint32_t> Circuit::var_index(std::string_view name) const {
  auto it = var_lookup_.find(std::string(name));
  if (it == var_lookup_.end()) return std::nullopt;
  return it->second;
}

Ref Circuit::add_gate(Kind kind, std::vector<Ref> children) {
  for (auto r : children) {
    if (r.node >= nodes_.size()) throw std::invalid_argument("gate references an unknown node");
  }
  const auto node = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{kind, 0, std::move(children)});
  return Ref{node, false};
}

Ref Circuit::make_and(std::vector<Ref> children) { return add_gate(Kind::And, std::move(children)); }

Ref Circuit::make_or(std::vector<Ref> children) { return add_gate(Kind::Or, std::move(children)); }

void Circuit::set_output(Ref r) {
  if (r.node >= nodes_.size()) throw std::invalid_argument("output references an unknown node");
  output_ = r;
}

std::vector<bool> Circuit::reachable(Ref root) const {
  std::vector<bool> live(nodes_.size(), false);
  live[root.node] = true;
  for (std::size_t k = nodes_.size(); k-- > 0;) {
    if (!live[k]) continue;
    for (auto ch : nodes_[k].children) live[ch.node] = true;
  }
  return live;
}

std::vector<std::string> Circuit::support() const {
  const auto live = reachable();
  std::vector<std::string> out;
  for (std::uint32_t v = 0; v < var_names_.size(); ++v) {
    if (live[var_nodes_[v]]) out.push_back(var_names_[v]);
  }
  return out;
}

Ref Circuit::import(const Circuit& other, Ref root) {
  const auto live = other.reachable(root);
  std::vector<Ref> map(other.size());
  map[0] = constant(true);
  for (std::uint32_t k = 1; k < other.size(); ++k) {
    if (!live[k]) continue;
    const Node& nd = other.node(k);
    if (nd.kind == Kind::Var) {
      map[k] = var(other.var_name(nd.var));
      continue;
    }
    std::vector<Ref> kids;
    kids.reserve(nd.children.size());
    for (auto ch : nd.children) kids.push_back(ch.negated ? ~map[ch.node] : map[ch.node]);
    map[k] = add_gate(nd.kind, std::move(kids));
  }
  return root.negated ? ~map[root.node] : map[root.node];
}

Circuit Circuit::extract(Ref root) const {
  Circuit out;
  out.set_output(out.import(*this, root));
  return out;
}

// ---------------------------------------------------------------------------

TernaryValues ternary_values(const Circuit& c, const Assignment& a) {
  TernaryValues values(c.num_vars(), -1);
  for (std::uint32_t v = 0; v < c.num_vars(); ++v) {
    auto it = a.find(c.var_name(v));
    if (it != a.end()) values[v] = it->second ? 1 : 0;
  }
  return values;
}

Circuit substitute(const Circuit& c, const TernaryValues& values) {
  const auto live = c.reachable();
  Circuit out;
  std::vector<Ref> map(c.size());
  map[0] = Circuit::constant(true);
  std::vector<Ref> kids;
  for (std::uint32_t k = 1; k < c.size(); ++k) {
    if (!live[k]) continue;
    const auto& nd = c.node(k);
    if (nd.kind == Circuit::Kind::Var) {
      const std::int8_t v = nd.var < values.size() ? values[nd.var] : std::int8_t{-1};
      map[k] = v < 0 ? out.var(c.var_name(nd.var)) : Circuit::constant(v == 1);
      continue;
    }
    // For And, true children are neutral and false absorbs; dually for Or.
    const bool is_and = nd.kind == Circuit::Kind::And;
    kids.clear();
    bool absorbed = false;
    for (auto ch : nd.children) {
      const Ref r = ch.negated ? ~map[ch.node] : map[ch.node];
      if (Circuit::is_constant(r)) {
        if (Circuit::constant_value(r) == is_and) continue;
        absorbed = true;
        break;
      }
      kids.push_back(r);
    }
    if (!absorbed) {
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      for (std::size_t m = 1; m < kids.size(); ++m) {
        if (kids[m].node == kids[m - 1].node) absorbed = true;
      }
    }
    if (absorbed) {
      map[k] = Circuit::constant(!is_and);
    } else if (kids.empty()) {
      map[k] = Circuit::constant(is_and);
    } else if (kids.size() == 1) {
      map[k] = kids[0];
    } else {
      map[k] = is_and ? out.make_and(kids) : out.make_or(kids);
    }
  }
  const Ref o = c.output();
  out.set_output(o.negated ? ~map[o.node] : map[o.node]);
  return out;
}

Circuit substitute(const Circuit& c, const Assignment& a) { return substitute(c, ternary_values(c, a)); }

Circuit simplify(const Circuit& c) { return substitute(c, TernaryValues(c.num_vars(), -1)); }

int evaluate_ternary(const Circuit& c, const TernaryValues& values) {
  const auto live = c.reachable();
  std::vector<std::int8_t> val(c.size(), -1);
  val[0] = 1;
  auto read = [&](Ref r) -> std::int8_t {
    const std::int8_t v = val[r.node];
    if (v < 0) return v;
    return static_cast<std::int8_t>(r.negated ? 1 - v : v);
  };
  for (std::uint32_t k = 1; k < c.size(); ++k) {
    if (!live[k]) continue;
    const auto& nd = c.node(k);
    if (nd.kind == Circuit::Kind::Var) {
      val[k] = nd.var < values.size() ? values[nd.var] : std::int8_t{-1};
      continue;
    }
    const std::int8_t absorbing = nd.kind == Circuit::Kind::And ? 0 : 1;
    bool unknown = false;
    std::int8_t result = static_cast<std::int8_t>(1 - absorbing);
    for (auto ch : nd.children) {
      const std::int8_t v = read(ch);
      if (v == absorbing) {
        result = absorbing;
        unknown = false;
        break;
      }
      if (v < 0) unknown = true;
    }
    val[k] = unknown ? std::int8_t{-1} : result;
  }
  return read(c.output());
}

bool evaluate(const Circuit& c, const Assignment& a) {
  const auto values = ternary_values(c, a);
  const auto live = c.reachable();
  for (std::uint32_t k = 1; k < c.size(); ++k) {
    const auto& nd = c.node(k);
    if (live[k] && nd.kind == Circuit::Kind::Var && values[nd.var] < 0) {
      throw std::invalid_argument("assignment misses variable '" + c.var_name(nd.var) + "'");
    }
  }
  return evaluate_ternary(c, values) == 1;
}

// ---------------------------------------------------------------------------

void Qbf::validate() const {
  std::set<std::string, std::less<>> seen;
  auto add_block = [&](const std::vector<std::string>& block, const char* label) {
    for (const auto& name : block) {
      if (!seen.insert(name).second) {
        throw std::invalid_argument(std::string("variable '") + name + "' declared twice (" + label + ")");
      }
    }
  };
  add_block(free, "free");
  add_block(exists, "exists");
  add_block(forall, "forall");
  for (const auto& name : matrix.support()) {
    if (!seen.contains(name)) {
      throw std::invalid_argument("matrix variable '" + name + "' is not quantified");
    }
  }
}

}  // namespace qsms
