#include "qsms/edge_vars.hpp"

#include <charconv>
#include <set>

namespace qsms {

std::string edge_var(int u, int v) {
  const auto c = Cell::of(u, v);
  return "e_" + std::to_string(c.i) + "_" + std::to_string(c.j);
}

std::optional<Cell> parse_edge_var(std::string_view name) {
  if (!name.starts_with("e_")) return std::nullopt;
  name.remove_prefix(2);
  const auto sep = name.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  auto number = [](std::string_view s) -> std::optional<int> {
    if (s.empty() || s.front() == '0') return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
  };
  const auto i = number(name.substr(0, sep));
  const auto j = number(name.substr(sep + 1));
  if (!i || !j || *i >= *j) return std::nullopt;
  return Cell{*i, *j};
}

std::optional<int> edge_vertex_count(const std::vector<std::string>& names) {
  std::set<Cell> cells;
  int n = 0;
  for (const auto& name : names) {
    const auto c = parse_edge_var(name);
    if (!c) return std::nullopt;
    cells.insert(*c);
    n = std::max(n, c->j);
  }
  if (n == 0 || cells.size() != cell_count(n) || cells.size() != names.size()) return std::nullopt;
  return n;
}

std::vector<std::string> edge_vars(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) out.push_back(edge_var(i, j));
  }
  return out;
}

Graph graph_from_assignment(int n, const Assignment& a) {
  Graph g(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      auto it = a.find(edge_var(i, j));
      if (it != a.end() && it->second) g.add_edge(i, j);
    }
  }
  return g;
}

Assignment assignment_from_graph(const Graph& g) {
  Assignment a;
  for (int i = 1; i <= g.order(); ++i) {
    for (int j = i + 1; j <= g.order(); ++j) a[edge_var(i, j)] = g.has_edge(i, j);
  }
  return a;
}

}  // namespace qsms
