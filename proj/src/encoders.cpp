#include "qsms/encoders.hpp"

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

#include "qsms/edge_vars.hpp"

namespace qsms {

namespace {

using Ref = Circuit::Ref;

std::string name_of(std::string_view prefix, int a, int b) {
  return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

std::string name_of(std::string_view prefix, int a) { return std::string(prefix) + "_" + std::to_string(a); }

// Accumulates the prefix blocks and the conjuncts of F while an encoding is built.
class Builder {
 public:
  explicit Builder(int n) : n_(n) {
    if (n < 1 || n > kMaxVertices) throw std::invalid_argument("vertex count out of range");
    q_.free = edge_vars(n);
    for (const auto& name : q_.free) q_.matrix.var(name);
  }

  int n() const { return n_; }
  Circuit& c() { return q_.matrix; }

  Ref e(int u, int v) { return c().var(edge_var(u, v)); }
  Ref exist(const std::string& name) { return declare(q_.exists, name); }
  Ref univ(const std::string& name) { return declare(q_.forall, name); }

  Ref all(std::vector<Ref> xs) { return c().make_and(std::move(xs)); }
  Ref any(std::vector<Ref> xs) { return c().make_or(std::move(xs)); }

  void require(Ref r) { parts_.push_back(r); }

  /// Matrix = F ∧ ¬H, or just F when there is no universal side.
  Qbf finish(std::optional<Ref> h) {
    if (h) parts_.push_back(~*h);
    c().set_output(all(std::move(parts_)));
    return std::move(q_);
  }

 private:
  Ref declare(std::vector<std::string>& block, const std::string& name) {
    if (!c().find_var(name)) block.push_back(name);
    return c().var(name);
  }

  int n_;
  Qbf q_;
  std::vector<Ref> parts_;
};

// "At least j of xs" for j = 1..k as gates, without auxiliary variables:
// after reading a prefix, count[j-1] holds iff at least j of it are true.
std::vector<std::optional<Ref>> counter(Circuit& c, const std::vector<Ref>& xs, int k) {
  std::vector<std::optional<Ref>> count(static_cast<std::size_t>(k));
  for (const Ref x : xs) {
    for (int j = k; j >= 1; --j) {
      auto& slot = count[static_cast<std::size_t>(j - 1)];
      std::optional<Ref> carry;
      if (j == 1) {
        carry = x;
      } else if (const auto& below = count[static_cast<std::size_t>(j - 2)]) {
        carry = c.make_and({x, *below});
      }
      if (!carry) continue;
      slot = slot ? c.make_or({*slot, *carry}) : *carry;
    }
  }
  return count;
}

Ref at_least(Circuit& c, const std::vector<Ref>& xs, int k) {
  if (k <= 0) return Circuit::constant(true);
  if (k > static_cast<int>(xs.size())) return Circuit::constant(false);
  return *counter(c, xs, k).back();
}

Ref at_most(Circuit& c, const std::vector<Ref>& xs, int k) { return ~at_least(c, xs, k + 1); }

std::vector<Ref> incident(Builder& b, int v) {
  std::vector<Ref> out;
  for (int u = 1; u <= b.n(); ++u) {
    if (u != v) out.push_back(b.e(u, v));
  }
  return out;
}

void require_cubic(Builder& b) {
  for (int v = 1; v <= b.n(); ++v) {
    const auto xs = incident(b, v);
    b.require(at_least(b.c(), xs, 3));
    b.require(at_most(b.c(), xs, 3));
  }
}

// Calls f on every cycle of the given length once, as a vertex sequence that
// starts at its smallest vertex and whose second vertex is below its last.
void for_each_cycle(int n, int length, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> seq;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::function<void()> extend = [&] {
    if (static_cast<int>(seq.size()) == length) {
      if (seq[1] < seq.back()) f(seq);
      return;
    }
    for (int v = seq.front() + 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      seq.push_back(v);
      extend();
      seq.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  for (int first = 1; first <= n; ++first) {
    seq = {first};
    extend();
  }
}

void forbid_cycles(Builder& b, int length) {
  for_each_cycle(b.n(), length, [&](const std::vector<int>& cyc) {
    std::vector<Ref> clause;
    for (std::size_t m = 0; m < cyc.size(); ++m) clause.push_back(~b.e(cyc[m], cyc[(m + 1) % cyc.size()]));
    b.require(b.any(std::move(clause)));
  });
}

// Layered reachability from vertex 1: r_v_t means v is within t steps.
void require_connected(Builder& b) {
  const int n = b.n();
  auto r = [&](int v, int t) { return b.exist(name_of("r", v, t)); };
  for (int t = 1; t < n; ++t) {
    for (int v = 1; v <= n; ++v) {
      const Ref here = r(v, t);
      if (t == 1) {
        if (v != 1) b.require(b.any({~here, b.e(1, v)}));
        continue;
      }
      std::vector<Ref> reasons{~here, r(v, t - 1)};
      for (int u = 1; u <= n; ++u) {
        if (u != v) reasons.push_back(b.all({b.e(u, v), r(u, t - 1)}));
      }
      b.require(b.any(std::move(reasons)));
    }
  }
  if (n > 1) {
    for (int v = 1; v <= n; ++v) b.require(r(v, n - 1));
  }
}

// Elimination ordering of width at most `bound`: o(i, j) says i is eliminated
// before j, arc(i, j) is an edge of the filled graph from i to a later j.
std::vector<Ref> elimination_ordering(Builder& b, bool universal, int bound) {
  const int n = b.n();
  const std::string o_prefix = universal ? "uo" : "o";
  const std::string arc_prefix = universal ? "uarc" : "arc";
  auto declare = [&](const std::string& name) { return universal ? b.univ(name) : b.exist(name); };
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) declare(name_of(o_prefix, i, j));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) declare(name_of(arc_prefix, i, j));
    }
  }
  auto before = [&](int i, int j) {
    return i < j ? b.c().var(name_of(o_prefix, i, j)) : ~b.c().var(name_of(o_prefix, j, i));
  };
  auto arc = [&](int i, int j) { return b.c().var(name_of(arc_prefix, i, j)); };

  std::vector<Ref> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (int l = 1; l <= n; ++l) {
        if (l != i && l != j) out.push_back(b.any({~before(i, j), ~before(j, l), before(i, l)}));
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      out.push_back(b.any({~b.e(i, j), ~before(i, j), arc(i, j)}));
      out.push_back(b.any({~arc(i, j), before(i, j)}));
    }
  }
  for (int l = 1; l <= n; ++l) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (i == l || j == l) continue;
        out.push_back(b.any({~arc(l, i), ~arc(l, j), arc(i, j), arc(j, i)}));
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    std::vector<Ref> later;
    for (int j = 1; j <= n; ++j) {
      if (j != i) later.push_back(arc(i, j));
    }
    out.push_back(at_most(b.c(), later, bound));
  }
  return out;
}

}  // namespace

std::vector<std::string> qstatic_perm_vars(int n, const std::string& perm_prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) out.push_back(name_of(perm_prefix, i, j));
  }
  return out;
}

Circuit encode_qstatic_minimality(const CellOrder& ord, const std::string& perm_prefix) {
  const int n = ord.order();
  Circuit c;
  for (const auto& name : edge_vars(n)) c.var(name);
  for (const auto& name : qstatic_perm_vars(n, perm_prefix)) c.var(name);
  auto e = [&](int u, int v) { return c.var(edge_var(u, v)); };
  auto p = [&](int from, int to) { return c.var(name_of(perm_prefix, from, to)); };

  std::vector<Ref> perm;
  for (int a = 1; a <= n; ++a) {
    std::vector<Ref> some;
    for (int j = 1; j <= n; ++j) some.push_back(p(a, j));
    perm.push_back(c.make_or(std::move(some)));
  }
  for (int a = 1; a <= n; ++a) {
    for (int j = 1; j <= n; ++j) {
      for (int j2 = j + 1; j2 <= n; ++j2) {
        perm.push_back(c.make_or({~p(a, j), ~p(a, j2)}));
        perm.push_back(c.make_or({~p(j, a), ~p(j2, a)}));
      }
    }
  }
  const Ref is_perm = c.make_and(std::move(perm));

  // The permuted graph has cell (i, j) iff some edge ab is sent onto it.
  auto permuted = [&](Cell cell) {
    std::vector<Ref> sources;
    for (int a = 1; a <= n; ++a) {
      for (int b2 = 1; b2 <= n; ++b2) {
        if (a != b2) sources.push_back(c.make_and({e(a, b2), p(a, cell.i), p(b2, cell.j)}));
      }
    }
    return c.make_or(std::move(sources));
  };

  std::vector<Ref> smaller;
  std::optional<Ref> equal_so_far;
  for (const Cell cell : ord.cells()) {
    const Ref orig = e(cell.i, cell.j);
    const Ref perm_cell = permuted(cell);
    std::vector<Ref> here{orig, ~perm_cell};
    if (equal_so_far) here.insert(here.begin(), *equal_so_far);
    smaller.push_back(c.make_and(std::move(here)));
    const Ref same = c.make_or({c.make_and({orig, perm_cell}), c.make_and({~orig, ~perm_cell})});
    equal_so_far = equal_so_far ? c.make_and({*equal_so_far, same}) : same;
  }
  const Ref non_min = c.make_or(std::move(smaller));
  c.set_output(~c.make_and({non_min, is_perm}));
  return simplify(c);
}

Qbf augment_with_qstatic(const Qbf& q, const CellOrder& ord) {
  const int n = ord.order();
  const auto expected = edge_vars(n);
  if (std::set<std::string>(q.free.begin(), q.free.end()) != std::set<std::string>(expected.begin(), expected.end())) {
    throw std::invalid_argument("static minimality needs the free variables to be the edge variables");
  }
  std::set<std::string, std::less<>> taken(q.free.begin(), q.free.end());
  taken.insert(q.exists.begin(), q.exists.end());
  taken.insert(q.forall.begin(), q.forall.end());
  for (const auto& name : q.matrix.support()) taken.insert(name);
  std::string prefix = "p";
  auto clashes = [&] {
    for (const auto& name : qstatic_perm_vars(n, prefix)) {
      if (taken.contains(name)) return true;
    }
    return false;
  };
  while (clashes()) prefix = "p" + prefix;

  const Circuit minimal = encode_qstatic_minimality(ord, prefix);
  Qbf out;
  out.free = q.free;
  out.exists = q.exists;
  out.forall = q.forall;
  for (const auto& name : qstatic_perm_vars(n, prefix)) out.forall.push_back(name);
  const Ref base = out.matrix.import(q.matrix, q.matrix.output());
  const Ref min = out.matrix.import(minimal, minimal.output());
  out.matrix.set_output(out.matrix.make_and({base, min}));
  return out;
}

Qbf encode_unconstrained(int n) {
  Builder b(n);
  return b.finish(std::nullopt);
}

Qbf encode_triangle_free(int n, int k, bool maximal) {
  if (k != 0 && k < 2) throw std::invalid_argument("k must be at least 2");
  Builder b(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int w = v + 1; w <= n; ++w) b.require(b.any({~b.e(u, v), ~b.e(u, w), ~b.e(v, w)}));
    }
  }
  if (maximal) {
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        std::vector<Ref> closed{b.e(u, v)};
        for (int w = 1; w <= n; ++w) {
          if (w != u && w != v) closed.push_back(b.all({b.e(u, w), b.e(v, w)}));
        }
        b.require(b.any(std::move(closed)));
      }
    }
  }
  if (k == 0) return b.finish(std::nullopt);

  const int colors = k - 1;
  for (int v = 1; v <= n; ++v) {
    for (int i = 1; i <= colors; ++i) b.univ(name_of("c", v, i));
  }
  auto col = [&](int v, int i) { return b.c().var(name_of("c", v, i)); };
  std::vector<Ref> proper;
  for (int v = 1; v <= n; ++v) {
    std::vector<Ref> some;
    for (int i = 1; i <= colors; ++i) some.push_back(col(v, i));
    proper.push_back(b.any(std::move(some)));
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int i = 1; i <= colors; ++i) proper.push_back(b.any({~b.e(u, v), ~col(u, i), ~col(v, i)}));
    }
  }
  return b.finish(b.all(std::move(proper)));
}

Qbf encode_folkman(int n, int k) {
  if (k < 3) throw std::invalid_argument("k must be at least 3");
  Builder b(n);
  std::vector<int> subset;
  std::function<void(int)> choose = [&](int next) {
    if (static_cast<int>(subset.size()) == k) {
      std::vector<Ref> missing;
      for (std::size_t x = 0; x < subset.size(); ++x) {
        for (std::size_t y = x + 1; y < subset.size(); ++y) missing.push_back(~b.e(subset[x], subset[y]));
      }
      b.require(b.any(std::move(missing)));
      return;
    }
    for (int v = next; v <= n; ++v) {
      subset.push_back(v);
      choose(v + 1);
      subset.pop_back();
    }
  };
  choose(1);

  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) b.univ(name_of("c", u, v));
  }
  auto col = [&](int u, int v) { return b.c().var(name_of("c", u, v)); };
  std::vector<Ref> mono;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int w = v + 1; w <= n; ++w) {
        const Ref same = b.any({b.all({col(u, v), col(u, w), col(v, w)}), b.all({~col(u, v), ~col(u, w), ~col(v, w)})});
        mono.push_back(b.all({b.e(u, v), b.e(u, w), b.e(v, w), same}));
      }
    }
  }
  // ¬H is the disjunction over triangles, so H is its negation.
  return b.finish(~b.any(std::move(mono)));
}

std::string_view to_string(DominationVariant v) {
  switch (v) {
    case DominationVariant::ThreeConnected: return "3conn";
    case DominationVariant::Bipartite: return "bipartite";
    case DominationVariant::Girth6: return "girth6";
  }
  return "?";
}

DominationVariant parse_domination_variant(std::string_view text) {
  if (text == "3conn") return DominationVariant::ThreeConnected;
  if (text == "bipartite") return DominationVariant::Bipartite;
  if (text == "girth6") return DominationVariant::Girth6;
  throw std::invalid_argument("unknown domination variant '" + std::string(text) + "'");
}

Qbf encode_domination(int n, DominationVariant variant) {
  Builder b(n);
  require_cubic(b);
  switch (variant) {
    case DominationVariant::ThreeConnected:
      require_connected(b);
      break;
    case DominationVariant::Bipartite: {
      for (int v = 1; v <= n; ++v) b.exist(name_of("b", v));
      auto side = [&](int v) { return b.c().var(name_of("b", v)); };
      for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
          b.require(b.any({~side(u), ~side(v), ~b.e(u, v)}));
          b.require(b.any({side(u), side(v), ~b.e(u, v)}));
        }
      }
      break;
    }
    case DominationVariant::Girth6:
      for (int length = 3; length <= 5; ++length) forbid_cycles(b, length);
      break;
  }

  std::vector<Ref> chosen;
  for (int v = 1; v <= n; ++v) chosen.push_back(b.univ(name_of("d", v)));
  std::vector<Ref> dominating;
  for (int v = 1; v <= n; ++v) {
    std::vector<Ref> covered{chosen[static_cast<std::size_t>(v - 1)]};
    for (int u = 1; u <= n; ++u) {
      if (u != v) covered.push_back(b.all({b.e(u, v), chosen[static_cast<std::size_t>(u - 1)]}));
    }
    dominating.push_back(b.any(std::move(covered)));
  }
  dominating.push_back(at_most(b.c(), chosen, (n + 2) / 3));
  return b.finish(b.all(std::move(dominating)));
}

Qbf encode_treewidth_exact(int n, int k) {
  if (k < 1 || k >= n) throw std::invalid_argument("treewidth bound needs 1 <= k < n");
  Builder b(n);
  for (const Ref r : elimination_ordering(b, false, k)) b.require(r);
  return b.finish(b.all(elimination_ordering(b, true, k - 1)));
}

Qbf encode_snark(int n) {
  Builder b(n);
  require_cubic(b);
  forbid_cycles(b, 3);
  forbid_cycles(b, 4);
  require_connected(b);

  auto col = [&](int u, int v, int l) {
    const auto c = Cell::of(u, v);
    return b.c().var("c_" + std::to_string(c.i) + "_" + std::to_string(c.j) + "_" + std::to_string(l));
  };
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int l = 1; l <= 3; ++l) b.univ("c_" + std::to_string(u) + "_" + std::to_string(v) + "_" + std::to_string(l));
    }
  }
  std::vector<Ref> proper;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) proper.push_back(b.any({~b.e(u, v), col(u, v, 1), col(u, v, 2), col(u, v, 3)}));
  }
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      for (int w = v + 1; w <= n; ++w) {
        if (v == u || w == u) continue;
        for (int l = 1; l <= 3; ++l) {
          proper.push_back(b.any({~b.e(u, v), ~b.e(u, w), ~col(u, v, l), ~col(u, w, l)}));
        }
      }
    }
  }
  return b.finish(b.all(std::move(proper)));
}

Qbf encode_kochen_specker(int n) {
  Builder b(n);
  forbid_cycles(b, 4);
  for (int v = 1; v <= n; ++v) b.require(at_least(b.c(), incident(b, v), 3));
  for (int v = 1; v <= n; ++v) {
    std::vector<Ref> triangles;
    for (int u = 1; u <= n; ++u) {
      for (int w = u + 1; w <= n; ++w) {
        if (u != v && w != v) triangles.push_back(b.all({b.e(v, u), b.e(v, w), b.e(u, w)}));
      }
    }
    b.require(b.any(std::move(triangles)));
  }
  for (int v = 1; v <= n; ++v) {
    for (int i = 1; i <= 4; ++i) b.exist(name_of("col", v, i));
  }
  auto col = [&](int v, int i) { return b.c().var(name_of("col", v, i)); };
  for (int v = 1; v <= n; ++v) b.require(b.any({col(v, 1), col(v, 2), col(v, 3), col(v, 4)}));
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (int i = 1; i <= 4; ++i) b.require(b.any({~b.e(u, v), ~col(u, i), ~col(v, i)}));
    }
  }

  std::vector<Ref> bit;
  for (int v = 1; v <= n; ++v) bit.push_back(b.univ(name_of("c", v)));
  auto one = [&](int v) { return bit[static_cast<std::size_t>(v - 1)]; };
  std::vector<Ref> valid;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      valid.push_back(b.any({~b.e(u, v), one(u), one(v)}));
      for (int w = v + 1; w <= n; ++w) {
        valid.push_back(b.any({~b.e(u, v), ~b.e(u, w), ~b.e(v, w), ~one(u), ~one(v), ~one(w)}));
      }
    }
  }
  return b.finish(b.all(std::move(valid)));
}

}  // namespace qsms
