#include "qsms/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qsms::oracle {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << (v - 1); }

Mask all_vertices(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Vertices reachable from the lowest vertex of `within` using only `within`.
bool connected_within(const Graph& g, Mask within) {
  if (within == 0) return true;
  Mask seen = Mask{1} << std::countr_zero(within);
  Mask frontier = seen;
  while (frontier) {
    const int v = std::countr_zero(frontier) + 1;
    frontier &= frontier - 1;
    const Mask fresh = g.neighbours(v) & within & ~seen;
    seen |= fresh;
    frontier |= fresh;
  }
  return seen == within;
}

// Per-vertex signature: triangle count, then the size of each distance layer.
std::vector<std::vector<int>> vertex_signatures(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    auto& s = sig[static_cast<std::size_t>(v - 1)];
    int triangles = 0;
    for (int u = 1; u <= n; ++u) {
      if (g.has_edge(u, v)) triangles += std::popcount(g.neighbours(u) & g.neighbours(v));
    }
    s.push_back(g.degree(v));
    s.push_back(triangles);
    Mask seen = bit(v);
    Mask layer = bit(v);
    while (layer) {
      Mask next = 0;
      for (Mask rest = layer; rest; rest &= rest - 1) next |= g.neighbours(std::countr_zero(rest) + 1);
      next &= ~seen;
      seen |= next;
      layer = next;
      if (next) s.push_back(std::popcount(next));
    }
  }
  return sig;
}

std::vector<std::vector<int>> sorted_signatures(const Graph& g) {
  auto sig = vertex_signatures(g);
  std::sort(sig.begin(), sig.end());
  return sig;
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.order();
  Graph g(n);
  int offset = 0;
  for (const auto& p : parts) {
    for (auto [u, v] : p.edges()) g.add_edge(u + offset, v + offset);
    offset += p.order();
  }
  return g;
}

void generate_connected_cubic(int n, std::vector<Graph>& classes) {
  std::map<std::vector<std::vector<int>>, std::vector<std::size_t>> by_signature;
  Graph g(n);
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
  int labelled = 1;

  auto emit = [&] {
    auto key = sorted_signatures(g);
    auto& bucket = by_signature[key];
    for (auto idx : bucket) {
      if (isomorphic(classes[idx], g)) return;
    }
    bucket.push_back(classes.size());
    classes.push_back(g);
  };

  // BFS-style growth: the smallest unfinished vertex takes all of its missing
  // neighbours at once, from later labelled vertices or fresh labels.
  std::function<void()> grow = [&] {
    int v = 1;
    while (v <= labelled && deg[static_cast<std::size_t>(v)] == 3) ++v;
    if (v > labelled) {
      if (labelled == n) emit();
      return;
    }
    const int need = 3 - deg[static_cast<std::size_t>(v)];
    std::vector<int> candidates;
    for (int u = v + 1; u <= labelled; ++u) {
      if (deg[static_cast<std::size_t>(u)] < 3 && !g.has_edge(u, v)) candidates.push_back(u);
    }
    const auto c = static_cast<int>(candidates.size());
    for (Mask subset = 0; subset < (Mask{1} << c); ++subset) {
      const int chosen = std::popcount(subset);
      const int fresh = need - chosen;
      if (fresh < 0 || labelled + fresh > n) continue;
      std::vector<int> added;
      for (int x = 0; x < c; ++x) {
        if ((subset >> x) & 1U) added.push_back(candidates[static_cast<std::size_t>(x)]);
      }
      for (int f = 1; f <= fresh; ++f) added.push_back(labelled + f);
      for (int u : added) {
        g.add_edge(u, v);
        ++deg[static_cast<std::size_t>(u)];
      }
      deg[static_cast<std::size_t>(v)] = 3;
      labelled += fresh;
      grow();
      labelled -= fresh;
      deg[static_cast<std::size_t>(v)] = 3 - need;
      for (int u : added) {
        g.remove_edge(u, v);
        --deg[static_cast<std::size_t>(u)];
      }
    }
  };
  grow();
}

}  // namespace

Graph canonical_form(const Graph& g, OrderKind kind) {
  const int n = g.order();
  if (n > 9) throw std::invalid_argument("brute-force canonical form limited to n <= 9");
  const CellOrder ord(kind, n);
  const auto cells = ord.cells();
  std::vector<int> pre(static_cast<std::size_t>(n));
  std::iota(pre.begin(), pre.end(), 1);
  // pre[i-1] is the original vertex placed at position i.
  Mask best = ~Mask{0};
  std::vector<int> best_pre = pre;
  do {
    Mask code = 0;
    for (const Cell c : cells) {
      code = (code << 1) | (g.has_edge(pre[static_cast<std::size_t>(c.i - 1)], pre[static_cast<std::size_t>(c.j - 1)]) ? 1U : 0U);
    }
    if (code < best) {
      best = code;
      best_pre = pre;
    }
  } while (std::next_permutation(pre.begin(), pre.end()));
  Graph out(n);
  for (const Cell c : cells) {
    if (g.has_edge(best_pre[static_cast<std::size_t>(c.i - 1)], best_pre[static_cast<std::size_t>(c.j - 1)])) {
      out.add_edge(c.i, c.j);
    }
  }
  return out;
}

std::vector<Graph> enumerate_canonical(int n, OrderKind kind, const GraphPredicate& keep) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  if (n > 8) throw std::invalid_argument("full canonical sweep limited to n <= 8");
  const CellOrder ord(kind, n);
  const auto cells = ord.cells();
  const auto m = static_cast<int>(cells.size());

  // For every relabelling, the source position feeding each target position.
  std::vector<std::vector<std::uint8_t>> tables;
  std::vector<int> pre(static_cast<std::size_t>(n));
  std::iota(pre.begin(), pre.end(), 1);
  do {
    std::vector<std::uint8_t> src(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) {
      const Cell c = cells[static_cast<std::size_t>(t)];
      const Cell from = Cell::of(pre[static_cast<std::size_t>(c.i - 1)], pre[static_cast<std::size_t>(c.j - 1)]);
      src[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>(ord.position(from));
    }
    tables.push_back(std::move(src));
  } while (std::next_permutation(pre.begin(), pre.end()));

  // Code bit (m-1-t) holds position t, so numeric order is vector order and
  // the first unvisited code of an orbit is its minimum.
  const Mask total = Mask{1} << m;
  std::vector<bool> visited(total, false);
  std::vector<Graph> out;
  for (Mask code = 0; code < total; ++code) {
    if (visited[code]) continue;
    for (const auto& src : tables) {
      Mask image = 0;
      for (int t = 0; t < m; ++t) {
        image = (image << 1) | ((code >> (m - 1 - src[static_cast<std::size_t>(t)])) & 1U);
      }
      visited[image] = true;
    }
    Graph g(n);
    for (int t = 0; t < m; ++t) {
      if ((code >> (m - 1 - t)) & 1U) g.add_edge(cells[static_cast<std::size_t>(t)].i, cells[static_cast<std::size_t>(t)].j);
    }
    if (!keep || keep(g)) out.push_back(std::move(g));
  }
  return out;
}

bool isomorphic(const Graph& a, const Graph& b) {
  const int n = a.order();
  if (n != b.order() || a.edge_count() != b.edge_count()) return false;
  const auto sa = vertex_signatures(a);
  const auto sb = vertex_signatures(b);
  {
    auto xa = sa, xb = sb;
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    if (xa != xb) return false;
  }
  std::vector<int> image(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::function<bool(int)> extend = [&](int v) {
    if (v > n) return true;
    for (int w = 1; w <= n; ++w) {
      if (used[static_cast<std::size_t>(w)] || sa[static_cast<std::size_t>(v - 1)] != sb[static_cast<std::size_t>(w - 1)]) continue;
      bool ok = true;
      for (int u = 1; u < v && ok; ++u) ok = a.has_edge(u, v) == b.has_edge(image[static_cast<std::size_t>(u)], w);
      if (!ok) continue;
      image[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = true;
      if (extend(v + 1)) return true;
      used[static_cast<std::size_t>(w)] = false;
    }
    return false;
  };
  return extend(1);
}

std::vector<Graph> enumerate_cubic(int n, bool connected_only) {
  if (n > 14) throw std::invalid_argument("cubic sweep limited to n <= 14");
  if (n < 4 || n % 2 != 0) return {};
  // connected[s] lists the connected classes on s vertices.
  std::vector<std::vector<Graph>> connected(static_cast<std::size_t>(n) + 1);
  for (int s = 4; s <= n; s += 2) {
    if (s == n || !connected_only) generate_connected_cubic(s, connected[static_cast<std::size_t>(s)]);
  }
  std::vector<Graph> out = connected[static_cast<std::size_t>(n)];
  if (connected_only) return out;

  // Multisets of at least two components, chosen in nondecreasing (size, index) order.
  std::vector<Graph> parts;
  std::function<void(int, int, std::size_t)> combine = [&](int left, int size, std::size_t index) {
    if (left == 0) {
      if (parts.size() >= 2) out.push_back(disjoint_union(parts));
      return;
    }
    for (int s = size; s <= left; s += 2) {
      const auto& pool = connected[static_cast<std::size_t>(s)];
      for (std::size_t i = (s == size ? index : 0); i < pool.size(); ++i) {
        if (s == n) continue;
        parts.push_back(pool[i]);
        combine(left - s, s, i);
        parts.pop_back();
      }
    }
  };
  combine(n, 4, 0);
  return out;
}

bool is_properly_k_colorable(const Graph& g, int k) {
  const int n = g.order();
  if (n == 0) return true;
  if (k <= 0) return false;
  std::vector<int> color(static_cast<std::size_t>(n) + 1, 0);
  std::function<bool(int, int)> assign = [&](int v, int used) {
    if (v > n) return true;
    // A fresh colour is only tried once, which removes colour symmetry.
    for (int c = 1; c <= std::min(k, used + 1); ++c) {
      bool ok = true;
      for (int u = 1; u < v && ok; ++u) ok = !(g.has_edge(u, v) && color[static_cast<std::size_t>(u)] == c);
      if (!ok) continue;
      color[static_cast<std::size_t>(v)] = c;
      if (assign(v + 1, std::max(used, c))) return true;
    }
    color[static_cast<std::size_t>(v)] = 0;
    return false;
  };
  return assign(1, 0);
}

int chromatic_number(const Graph& g) {
  int k = 0;
  while (!is_properly_k_colorable(g, k)) ++k;
  return k;
}

bool is_3_edge_colorable(const Graph& g) {
  for (int v = 1; v <= g.order(); ++v) {
    if (g.degree(v) > 3) return false;
  }
  const auto edges = g.edges();
  std::vector<int> color(edges.size(), 0);
  // used[v] has bit c set when colour c is taken at v.
  std::vector<unsigned> used(static_cast<std::size_t>(g.order()) + 1, 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t e) {
    if (e == edges.size()) return true;
    const auto [u, v] = edges[e];
    for (int c = 0; c < 3; ++c) {
      const unsigned b = 1U << c;
      if ((used[static_cast<std::size_t>(u)] | used[static_cast<std::size_t>(v)]) & b) continue;
      used[static_cast<std::size_t>(u)] |= b;
      used[static_cast<std::size_t>(v)] |= b;
      if (assign(e + 1)) return true;
      used[static_cast<std::size_t>(u)] &= ~b;
      used[static_cast<std::size_t>(v)] &= ~b;
    }
    return false;
  };
  return assign(0);
}

int min_dominating_set_size(const Graph& g) {
  const int n = g.order();
  if (n > 24) throw std::invalid_argument("domination sweep limited to n <= 24");
  const Mask everything = all_vertices(n);
  std::vector<Mask> closed(static_cast<std::size_t>(n) + 1);
  for (int v = 1; v <= n; ++v) closed[static_cast<std::size_t>(v)] = g.neighbours(v) | bit(v);
  for (int size = 0; size <= n; ++size) {
    std::vector<int> pick;
    std::function<bool(int, Mask)> choose = [&](int from, Mask covered) {
      if (static_cast<int>(pick.size()) == size) return covered == everything;
      for (int v = from; v <= n; ++v) {
        pick.push_back(v);
        const bool hit = choose(v + 1, covered | closed[static_cast<std::size_t>(v)]);
        pick.pop_back();
        if (hit) return true;
      }
      return false;
    };
    if (choose(1, 0)) return size;
  }
  return n;
}

int treewidth(const Graph& g) {
  const int n = g.order();
  if (n > 16) throw std::invalid_argument("treewidth DP limited to n <= 16");
  if (n == 0) return -1;
  const auto full = static_cast<std::uint32_t>(all_vertices(n));
  // q(S, v): vertices outside S ∪ {v} reachable from v through S.
  auto q = [&](std::uint32_t s, int v) {
    Mask seen = bit(v);
    Mask frontier = bit(v);
    Mask outside = 0;
    while (frontier) {
      const int x = std::countr_zero(frontier) + 1;
      frontier &= frontier - 1;
      const Mask nb = g.neighbours(x) & ~seen;
      seen |= nb;
      outside |= nb & ~Mask{s};
      frontier |= nb & Mask{s};
    }
    return std::popcount(outside);
  };
  std::vector<int> tw(std::size_t{1} << n, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest) + 1;
      const std::uint32_t without = s & ~(1U << (v - 1));
      best = std::min(best, std::max(tw[without], q(without, v)));
    }
    tw[s] = best;
  }
  return tw[full];
}

bool is_010_colorable(const Graph& g) {
  const int n = g.order();
  if (n > 24) throw std::invalid_argument("010 sweep limited to n <= 24");
  const auto edges = g.edges();
  std::vector<Mask> triangles;
  for (auto [u, v] : edges) {
    for (Mask common = g.neighbours(u) & g.neighbours(v) & ~(bit(v + 1) - 1); common; common &= common - 1) {
      triangles.push_back(bit(u) | bit(v) | (common & -common));
    }
  }
  for (Mask ones = 0; ones < (Mask{1} << n); ++ones) {
    bool ok = true;
    for (auto [u, v] : edges) {
      if (!(ones & (bit(u) | bit(v)))) {
        ok = false;
        break;
      }
    }
    for (std::size_t t = 0; ok && t < triangles.size(); ++t) ok = (ones & triangles[t]) != triangles[t];
    if (ok) return true;
  }
  return false;
}

bool folkman_check(const Graph& g) {
  const auto edges = g.edges();
  if (edges.size() > 24) throw std::invalid_argument("Folkman sweep limited to 24 edges");
  std::map<std::pair<int, int>, int> index;
  for (std::size_t e = 0; e < edges.size(); ++e) index[edges[e]] = static_cast<int>(e);
  std::vector<std::uint32_t> triangles;
  for (auto [u, v] : edges) {
    for (int w = v + 1; w <= g.order(); ++w) {
      if (g.has_edge(u, w) && g.has_edge(v, w)) {
        triangles.push_back((1U << index[{u, v}]) | (1U << index[{u, w}]) | (1U << index[{v, w}]));
      }
    }
  }
  for (std::uint32_t red = 0; red < (std::uint32_t{1} << edges.size()); ++red) {
    bool mono = false;
    for (auto t : triangles) {
      if ((red & t) == t || (red & t) == 0) {
        mono = true;
        break;
      }
    }
    if (!mono) return false;
  }
  return true;
}

bool has_clique(const Graph& g, int k) {
  if (k <= 0) return true;
  std::function<bool(Mask, int)> grow = [&](Mask candidates, int need) {
    if (need == 0) return true;
    for (; candidates; candidates &= candidates - 1) {
      const int v = std::countr_zero(candidates) + 1;
      if (grow(candidates & g.neighbours(v) & ~(bit(v + 1) - 1), need - 1)) return true;
    }
    return false;
  };
  return grow(all_vertices(g.order()), k);
}

bool is_maximal_triangle_free(const Graph& g) {
  if (has_clique(g, 3)) return false;
  for (int u = 1; u <= g.order(); ++u) {
    for (int v = u + 1; v <= g.order(); ++v) {
      if (!g.has_edge(u, v) && (g.neighbours(u) & g.neighbours(v)) == 0) return false;
    }
  }
  return true;
}

ConnectivityReport connectivity_report(const Graph& g) {
  const int n = g.order();
  const Mask everything = all_vertices(n);
  ConnectivityReport r;
  r.connected = connected_within(g, everything);
  r.two_connected = n >= 3 && r.connected;
  for (int v = 1; v <= n && r.two_connected; ++v) r.two_connected = connected_within(g, everything & ~bit(v));
  r.three_connected = n >= 4 && r.two_connected;
  for (int u = 1; u <= n && r.three_connected; ++u) {
    for (int v = u + 1; v <= n && r.three_connected; ++v) {
      r.three_connected = connected_within(g, everything & ~bit(u) & ~bit(v));
    }
  }

  r.min_degree = n;
  r.max_degree = 0;
  for (int v = 1; v <= n; ++v) {
    r.min_degree = std::min(r.min_degree, g.degree(v));
    r.max_degree = std::max(r.max_degree, g.degree(v));
  }
  if (n == 0) r.min_degree = 0;
  r.cubic = n > 0 && r.min_degree == 3 && r.max_degree == 3;

  // Shortest cycle through BFS from every root.
  for (int root = 1; root <= n; ++root) {
    std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> queue{root};
    dist[static_cast<std::size_t>(root)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      for (int y = 1; y <= n; ++y) {
        if (!g.has_edge(x, y) || y == parent[static_cast<std::size_t>(x)]) continue;
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          parent[static_cast<std::size_t>(y)] = x;
          queue.push_back(y);
        } else {
          const int len = dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1;
          if (r.girth == 0 || len < r.girth) r.girth = len;
        }
      }
    }
  }

  std::vector<int> side(static_cast<std::size_t>(n) + 1, -1);
  r.bipartite = true;
  for (int s = 1; s <= n && r.bipartite; ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size() && r.bipartite; ++head) {
      const int x = queue[head];
      for (int y = 1; y <= n; ++y) {
        if (!g.has_edge(x, y)) continue;
        if (side[static_cast<std::size_t>(y)] < 0) {
          side[static_cast<std::size_t>(y)] = 1 - side[static_cast<std::size_t>(x)];
          queue.push_back(y);
        } else if (side[static_cast<std::size_t>(y)] == side[static_cast<std::size_t>(x)]) {
          r.bipartite = false;
        }
      }
    }
  }

  r.triangle_free = !has_clique(g, 3);
  r.square_free = true;
  for (int u = 1; u <= n && r.square_free; ++u) {
    for (int v = u + 1; v <= n && r.square_free; ++v) {
      r.square_free = std::popcount(g.neighbours(u) & g.neighbours(v)) < 2;
    }
  }
  r.every_vertex_on_triangle = true;
  for (int v = 1; v <= n && r.every_vertex_on_triangle; ++v) {
    bool on = false;
    for (Mask nb = g.neighbours(v); nb && !on; nb &= nb - 1) {
      const int u = std::countr_zero(nb) + 1;
      on = (g.neighbours(u) & g.neighbours(v)) != 0;
    }
    r.every_vertex_on_triangle = on;
  }
  return r;
}

bool qbf_truth_bruteforce(const Qbf& q, const Assignment& free_assignment) {
  const Circuit& c = q.matrix;
  TernaryValues values(c.num_vars(), -1);
  for (const auto& name : q.free) {
    const auto idx = c.var_index(name);
    if (!idx) continue;
    auto it = free_assignment.find(name);
    if (it == free_assignment.end()) throw std::invalid_argument("free variable '" + name + "' is unassigned");
    values[*idx] = it->second ? 1 : 0;
  }
  std::vector<std::pair<std::uint32_t, bool>> order;  // (var, universal)
  for (const auto& name : q.exists) {
    if (auto idx = c.var_index(name)) order.emplace_back(*idx, false);
  }
  for (const auto& name : q.forall) {
    if (auto idx = c.var_index(name)) order.emplace_back(*idx, true);
  }
  if (order.size() > 30) throw std::invalid_argument("brute-force QBF limited to 30 quantified variables");

  std::function<bool(std::size_t)> expand = [&](std::size_t at) {
    const int known = evaluate_ternary(c, values);
    if (known >= 0) return known == 1;
    if (at == order.size()) throw std::logic_error("matrix undetermined under a total assignment");
    const auto [var, universal] = order[at];
    bool result = universal;
    for (std::int8_t b = 0; b <= 1; ++b) {
      values[var] = b;
      const bool sub = expand(at + 1);
      if (sub != universal) {
        result = sub;
        break;
      }
    }
    values[var] = -1;
    return result;
  };
  return expand(0);
}

Graph delete_edge(const Graph& g, int u, int v) {
  Graph out = g;
  out.remove_edge(u, v);
  return out;
}

Graph contract_edge(const Graph& g, int u, int v) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("contracting a non-edge");
  const int keep = std::min(u, v);
  const int gone = std::max(u, v);
  auto rename = [&](int w) {
    if (w == gone) w = keep;
    return w > gone ? w - 1 : w;
  };
  Graph out(g.order() - 1);
  for (auto [a, b] : g.edges()) {
    const int x = rename(a);
    const int y = rename(b);
    if (x != y && !out.has_edge(x, y)) out.add_edge(x, y);
  }
  return out;
}

}  // namespace qsms::oracle
