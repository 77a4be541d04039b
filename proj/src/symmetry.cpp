#include "qsms/symmetry.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace qsms {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int k) { return Mask{1} << k; }

enum class Mode { Check, Minimize };

enum class Cmp { Less, Equal, Greater };

// Compares two rows given as position bitmasks; the first differing
// position decides, and a 0 there is the smaller vector.
Cmp compare_rows(Mask row, Mask ref) {
  const Mask diff = row ^ ref;
  if (diff == 0) return Cmp::Equal;
  const int first = std::countr_zero(diff);
  return (row >> first) & 1U ? Cmp::Greater : Cmp::Less;
}

// Depth-first search over inverse permutations sigma (sigma(position) =
// vertex). In Check mode the reference is the graph itself and the search
// stops at the first strictly smaller copy. In Minimize mode the reference
// tracks the best prefix found; rows not yet fixed are "unknown" and lose
// against any candidate.
//
// Lex order compares row by row. Placing sigma(i) and splitting every later
// cell into non-neighbours followed by neighbours fixes row i completely,
// and some smallest copy is always consistent with that split, so only the
// members of the cell at position i need to be branched on.
//
// Colex order compares column by column; column j is fixed once
// sigma(0..j) are placed, so candidates are all unplaced vertices.
class TotalSearch {
 public:
  TotalSearch(const Graph& g, OrderKind kind, Mode mode, std::uint64_t node_limit)
      : n_(g.order()), kind_(kind), mode_(mode), limit_(node_limit) {
    for (int v = 0; v < n_; ++v) adj_[static_cast<std::size_t>(v)] = g.neighbours(v + 1);
    ref_.assign(static_cast<std::size_t>(n_), 0);
    known_.assign(static_cast<std::size_t>(n_), true);
    for (int v = 0; v < n_; ++v) {
      const Mask row = adj_[static_cast<std::size_t>(v)];
      // Lex: row v over positions > v. Colex: column v over positions < v.
      ref_[static_cast<std::size_t>(v)] =
          kind_ == OrderKind::Lex ? (row & ~((bit(v) << 1) - 1)) : (row & (bit(v) - 1));
    }
    best_.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) best_[static_cast<std::size_t>(v)] = v;
  }

  void run() {
    std::vector<int> order(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) order[static_cast<std::size_t>(v)] = v;
    if (n_ <= 1) return;
    if (kind_ == OrderKind::Lex) {
      lex(0, order, n_ > 0 ? bit(0) : 0);
    } else {
      colex(0, order, 0);
    }
  }

  bool aborted() const { return aborted_; }
  const std::optional<std::vector<int>>& found() const { return found_; }
  const std::vector<int>& best() const { return best_; }

 private:
  bool twins(int v, int w) const {
    return (adj_[static_cast<std::size_t>(v)] & ~bit(w)) == (adj_[static_cast<std::size_t>(w)] & ~bit(v));
  }

  bool count_node() {
    ++nodes_;
    if (limit_ != 0 && nodes_ > limit_) {
      aborted_ = true;
      return false;
    }
    return true;
  }

  // Returns true when the whole search must stop.
  bool visit(int depth, Mask row, const std::vector<int>& child, Mask child_starts, Mask used) {
    Cmp cmp;
    if (mode_ == Mode::Minimize && !known_[static_cast<std::size_t>(depth)]) {
      cmp = Cmp::Less;
    } else {
      cmp = compare_rows(row, ref_[static_cast<std::size_t>(depth)]);
    }
    if (cmp == Cmp::Greater) return false;
    if (cmp == Cmp::Less) {
      if (mode_ == Mode::Check) {
        found_ = child;
        return true;
      }
      ref_[static_cast<std::size_t>(depth)] = row;
      known_[static_cast<std::size_t>(depth)] = true;
      for (int k = depth + 1; k < n_; ++k) known_[static_cast<std::size_t>(k)] = false;
    }
    return kind_ == OrderKind::Lex ? lex(depth + 1, child, child_starts) : colex(depth + 1, child, used);
  }

  bool leaf(const std::vector<int>& order) {
    if (mode_ == Mode::Minimize) best_ = order;
    return false;
  }

  bool lex(int i, const std::vector<int>& order, Mask starts) {
    if (!count_node()) return true;
    if (i >= n_ - 1) return leaf(order);
    int end = i + 1;
    while (end < n_ && !((starts >> end) & 1U)) ++end;

    std::vector<int> candidates(order.begin() + i, order.begin() + end);
    std::sort(candidates.begin(), candidates.end());
    std::vector<int> tried;
    for (int v : candidates) {
      if (std::any_of(tried.begin(), tried.end(), [&](int w) { return twins(v, w); })) continue;
      tried.push_back(v);

      std::vector<int> child = order;
      const auto pos = std::find(child.begin() + i, child.begin() + end, v);
      std::rotate(child.begin() + i, pos, pos + 1);
      Mask child_starts = starts | bit(i) | bit(i + 1);

      const Mask nbrs = adj_[static_cast<std::size_t>(v)];
      int s = i + 1;
      while (s < n_) {
        int t = s + 1;
        while (t < n_ && !((child_starts >> t) & 1U)) ++t;
        const auto mid = std::stable_partition(child.begin() + s, child.begin() + t,
                                               [&](int w) { return !((nbrs >> w) & 1U); });
        const auto split = static_cast<int>(mid - child.begin());
        if (split > s && split < t) child_starts |= bit(split);
        s = t;
      }

      Mask row = 0;
      for (int j = i + 1; j < n_; ++j) {
        if ((nbrs >> child[static_cast<std::size_t>(j)]) & 1U) row |= bit(j);
      }
      if (visit(i, row, child, child_starts, 0)) return true;
    }
    return false;
  }

  bool colex(int j, const std::vector<int>& order, Mask used) {
    if (!count_node()) return true;
    if (j >= n_) return leaf(order);
    std::vector<int> tried;
    for (int v = 0; v < n_; ++v) {
      if ((used >> v) & 1U) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int w) { return twins(v, w); })) continue;
      tried.push_back(v);

      // Swap so that unplaced positions still hold a permutation of the rest.
      std::vector<int> child = order;
      std::iter_swap(child.begin() + j, std::find(child.begin() + j, child.end(), v));
      const Mask nbrs = adj_[static_cast<std::size_t>(v)];
      Mask column = 0;
      for (int i = 0; i < j; ++i) {
        if ((nbrs >> child[static_cast<std::size_t>(i)]) & 1U) column |= bit(i);
      }
      if (visit(j, column, child, 0, used | bit(v))) return true;
    }
    return false;
  }

  int n_;
  OrderKind kind_;
  Mode mode_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::array<Mask, kMaxVertices> adj_{};
  std::vector<Mask> ref_;
  std::vector<bool> known_;
  std::vector<int> best_;
  std::optional<std::vector<int>> found_;
};

// sigma lists the vertex placed at each position (0-based); the witness p
// maps each vertex to its position, p = sigma^-1.
Permutation witness_from_order(const std::vector<int>& sigma) {
  std::vector<int> image(sigma.size());
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    image[static_cast<std::size_t>(sigma[pos])] = static_cast<int>(pos) + 1;
  }
  return Permutation(std::move(image));
}

// Direct search over partial vertex maps for partially defined graphs:
// sigma(1..d) are fixed in increasing target index and every cell whose
// endpoints are both placed is compared in order.
class PartialSearch {
 public:
  PartialSearch(const PartialGraph& g, const CellOrder& ord, std::uint64_t limit)
      : g_(g), cells_(ord.cells()), n_(g.order()), limit_(limit) {
    sigma_.assign(static_cast<std::size_t>(n_) + 1, 0);
    used_.assign(static_cast<std::size_t>(n_) + 1, false);
    // Fewest undefined incident cells first; ties by vertex index.
    for (int v = 1; v <= n_; ++v) candidates_.push_back(v);
    std::vector<int> freedom(static_cast<std::size_t>(n_) + 1, 0);
    for (int v = 1; v <= n_; ++v) {
      for (int w = 1; w <= n_; ++w) {
        if (w != v && g.at(v, w) == CellState::Undefined) ++freedom[static_cast<std::size_t>(v)];
      }
    }
    std::stable_sort(candidates_.begin(), candidates_.end(), [&](int a, int b) {
      return freedom[static_cast<std::size_t>(a)] < freedom[static_cast<std::size_t>(b)];
    });
  }

  std::optional<Permutation> run() {
    if (n_ <= 1) return std::nullopt;
    dfs(0, 0);
    return witness_;
  }

 private:
  bool dfs(int depth, std::size_t t) {
    ++nodes_;
    if (limit_ != 0 && nodes_ > limit_) return true;
    while (t < cells_.size() && cells_[t].j <= depth) {
      const Cell c = cells_[t];
      const CellState a = g_.at(c);
      const CellState b = g_.at(sigma_[static_cast<std::size_t>(c.i)], sigma_[static_cast<std::size_t>(c.j)]);
      if (a == CellState::Undefined || b == CellState::Undefined) return false;
      if (a < b) return false;
      if (a > b) {
        std::vector<int> image(static_cast<std::size_t>(n_));
        for (int pos = 1; pos <= depth; ++pos) {
          image[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(pos)] - 1)] = pos;
        }
        // Unplaced positions do not influence the certified prefix.
        std::vector<int> free_vertices;
        std::vector<int> free_positions;
        for (int v = 1; v <= n_; ++v) {
          if (!used_[static_cast<std::size_t>(v)]) free_vertices.push_back(v);
        }
        for (int pos = depth + 1; pos <= n_; ++pos) free_positions.push_back(pos);
        for (std::size_t k = 0; k < free_vertices.size(); ++k) {
          image[static_cast<std::size_t>(free_vertices[k] - 1)] = free_positions[k];
        }
        witness_ = Permutation(std::move(image));
        return true;
      }
      ++t;
    }
    if (t == cells_.size()) return false;
    for (int v : candidates_) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      used_[static_cast<std::size_t>(v)] = true;
      sigma_[static_cast<std::size_t>(depth + 1)] = v;
      if (dfs(depth + 1, t)) return true;
      used_[static_cast<std::size_t>(v)] = false;
      sigma_[static_cast<std::size_t>(depth + 1)] = 0;
    }
    return false;
  }

  const PartialGraph& g_;
  std::span<const Cell> cells_;
  int n_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  std::vector<int> sigma_;
  std::vector<bool> used_;
  std::vector<int> candidates_;
  std::optional<Permutation> witness_;
};

void check_orders_match(int n, const CellOrder& ord) {
  if (ord.order() != n) throw std::invalid_argument("cell order does not match graph order");
}

}  // namespace

std::optional<Permutation> find_smaller_copy(const Graph& g, const CellOrder& ord,
                                             const SymmetryOptions& options) {
  check_orders_match(g.order(), ord);
  TotalSearch search(g, ord.kind(), Mode::Check, options.node_limit);
  search.run();
  if (search.aborted() || !search.found()) return std::nullopt;
  return witness_from_order(*search.found());
}

bool is_canonical(const Graph& g, const CellOrder& ord, const SymmetryOptions& options) {
  return !find_smaller_copy(g, ord, options).has_value();
}

Graph canonical_form(const Graph& g, const CellOrder& ord) {
  check_orders_match(g.order(), ord);
  if (g.order() <= 1) return g;
  TotalSearch search(g, ord.kind(), Mode::Minimize, 0);
  search.run();
  return apply_permutation(g, witness_from_order(search.best()));
}

std::optional<Violation> certify_violation(const PartialGraph& g, const CellOrder& ord,
                                           const Permutation& witness) {
  check_orders_match(g.order(), ord);
  const Permutation sigma = witness.inverse();
  Violation v{witness, {}};
  auto record = [&](Cell c, CellState s) {
    for (const auto& [cell, state] : v.consulted) {
      if (cell == c) return;
    }
    v.consulted.emplace_back(c, s);
  };
  for (const Cell c : ord.cells()) {
    const Cell pre = Cell::of(sigma(c.i), sigma(c.j));
    const CellState a = g.at(c);
    const CellState b = g.at(pre);
    if (a == CellState::Undefined || b == CellState::Undefined) return std::nullopt;
    record(c, a);
    record(pre, b);
    if (a > b) return v;
    if (a < b) return std::nullopt;
  }
  return std::nullopt;
}

MinimalityVerdict check_partial(const PartialGraph& g, const CellOrder& ord, const SymmetryOptions& options) {
  check_orders_match(g.order(), ord);
  std::optional<Permutation> witness;
  if (g.is_total()) {
    witness = find_smaller_copy(Graph::from_partial(g), ord, options);
  } else {
    witness = PartialSearch(g, ord, options.node_limit).run();
  }
  if (!witness) return {};
  return {certify_violation(g, ord, *witness)};
}

sat::Clause violation_to_clause(const Violation& v, const std::function<sat::Var(Cell)>& varmap) {
  sat::Clause clause;
  clause.reserve(v.consulted.size());
  for (const auto& [cell, state] : v.consulted) {
    // Only defined cells are ever consulted.
    clause.push_back(sat::Lit::make(varmap(cell), state == CellState::Absent));
  }
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  return clause;
}

}  // namespace qsms
