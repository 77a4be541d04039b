#include "qsms/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace qsms {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw std::invalid_argument("vertex count " + std::to_string(n) + " outside [0, " +
                                std::to_string(kMaxVertices) + "]");
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Parses exactly `count` whitespace-separated non-negative integers.
bool parse_ints(std::string_view line, std::span<long> out) {
  std::size_t pos = 0;
  for (auto& value : out) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) return false;
    auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc{}) return false;
    pos = static_cast<std::size_t>(ptr - line.data());
    if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') return false;
  }
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  return pos == line.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size() + 1, false);
  for (int v : image_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(size()));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) image[static_cast<std::size_t>(v - 1)] = v;
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int v = 1; v <= size(); ++v) inv[static_cast<std::size_t>((*this)(v) - 1)] = v;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> out(image_.size());
  for (int v = 1; v <= size(); ++v) out[static_cast<std::size_t>(v - 1)] = (*this)(inner(v));
  return Permutation(std::move(out));
}

// ---------------------------------------------------------------------------
// PartialGraph

PartialGraph::PartialGraph(int n, CellState fill) : n_(n) {
  check_order(n);
  cells_.assign(cell_count(n), fill);
}

std::size_t PartialGraph::index(int u, int v) const {
  if (u == v || u < 1 || v < 1 || u > n_ || v > n_) {
    throw std::out_of_range("invalid cell (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  if (u > v) std::swap(u, v);
  auto i = static_cast<std::size_t>(u - 1);
  auto n = static_cast<std::size_t>(n_);
  return i * (2 * n - i - 1) / 2 + static_cast<std::size_t>(v - u - 1);
}

bool PartialGraph::is_total() const { return undefined_count() == 0; }

std::size_t PartialGraph::undefined_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), CellState::Undefined));
}

bool PartialGraph::extends(const PartialGraph& base) const {
  if (base.n_ != n_) return false;
  for (std::size_t t = 0; t < cells_.size(); ++t) {
    if (base.cells_[t] != CellState::Undefined && base.cells_[t] != cells_[t]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n) : n_(n) {
  check_order(n);
  rows_.assign(static_cast<std::size_t>(n), 0);
}

void Graph::check_pair(int u, int v) const {
  if (u < 1 || v < 1 || u > n_ || v > n_) {
    throw std::invalid_argument("vertex out of range in edge " + std::to_string(u) + "-" +
                                std::to_string(v));
  }
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_partial(const PartialGraph& p) {
  Graph g(p.order());
  for (int i = 1; i <= p.order(); ++i) {
    for (int j = i + 1; j <= p.order(); ++j) {
      switch (p.at(i, j)) {
        case CellState::Present: g.add_edge(i, j); break;
        case CellState::Absent: break;
        case CellState::Undefined: throw std::invalid_argument("partial graph has undefined cells");
      }
    }
  }
  return g;
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  rows_[static_cast<std::size_t>(u - 1)] |= std::uint64_t{1} << (v - 1);
  rows_[static_cast<std::size_t>(v - 1)] |= std::uint64_t{1} << (u - 1);
}

void Graph::remove_edge(int u, int v) {
  check_pair(u, v);
  rows_[static_cast<std::size_t>(u - 1)] &= ~(std::uint64_t{1} << (v - 1));
  rows_[static_cast<std::size_t>(v - 1)] &= ~(std::uint64_t{1} << (u - 1));
}

int Graph::degree(int v) const { return std::popcount(neighbours(v)); }

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (auto row : rows_) twice += static_cast<std::size_t>(std::popcount(row));
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) {
      if (has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

PartialGraph Graph::to_partial() const {
  PartialGraph p(n_, CellState::Absent);
  for (auto [u, v] : edges()) p.set(u, v, CellState::Present);
  return p;
}

// ---------------------------------------------------------------------------
// CellOrder

CellOrder::CellOrder(OrderKind kind, int n) : kind_(kind), n_(n) {
  check_order(n);
  cells_.reserve(cell_count(n));
  if (kind == OrderKind::Lex) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) cells_.push_back({i, j});
    }
  } else {
    for (int j = 2; j <= n; ++j) {
      for (int i = 1; i < j; ++i) cells_.push_back({i, j});
    }
  }
}

std::size_t CellOrder::position(Cell c) const {
  if (c.i < 1 || c.i >= c.j || c.j > n_) throw std::out_of_range("cell outside order");
  auto i = static_cast<std::size_t>(c.i);
  auto j = static_cast<std::size_t>(c.j);
  if (kind_ == OrderKind::Lex) {
    auto n = static_cast<std::size_t>(n_);
    return (i - 1) * (2 * n - i) / 2 + (j - i - 1);
  }
  return (j - 1) * (j - 2) / 2 + (i - 1);
}

std::string_view to_string(OrderKind kind) { return kind == OrderKind::Lex ? "lex" : "colex"; }

OrderKind parse_order_kind(std::string_view text) {
  if (text == "lex") return OrderKind::Lex;
  if (text == "colex") return OrderKind::Colex;
  throw std::invalid_argument("unknown cell order '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Permutation application and matrix vectors

Graph apply_permutation(const Graph& g, const Permutation& p) {
  if (p.size() != g.order()) throw std::invalid_argument("permutation length differs from graph order");
  Graph out(g.order());
  for (auto [u, v] : g.edges()) out.add_edge(p(u), p(v));
  return out;
}

PartialGraph apply_permutation(const PartialGraph& g, const Permutation& p) {
  if (p.size() != g.order()) throw std::invalid_argument("permutation length differs from graph order");
  PartialGraph out(g.order());
  for (int i = 1; i <= g.order(); ++i) {
    for (int j = i + 1; j <= g.order(); ++j) out.set(p(i), p(j), g.at(i, j));
  }
  return out;
}

std::vector<CellState> matrix_vector(const PartialGraph& g, const CellOrder& ord) {
  if (ord.order() != g.order()) throw std::invalid_argument("cell order does not match graph order");
  std::vector<CellState> out;
  out.reserve(ord.cells().size());
  for (auto c : ord.cells()) out.push_back(g.at(c));
  return out;
}

std::vector<CellState> matrix_vector(const Graph& g, const CellOrder& ord) {
  if (ord.order() != g.order()) throw std::invalid_argument("cell order does not match graph order");
  std::vector<CellState> out;
  out.reserve(ord.cells().size());
  for (auto c : ord.cells()) out.push_back(g.has_edge(c.i, c.j) ? CellState::Present : CellState::Absent);
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list text

Graph parse_edge_list(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "missing header line \"n m\"");
  long header[2];
  if (!parse_ints(lines[0], header)) throw ParseError(1, "malformed header, expected \"n m\"");
  const long n = header[0];
  const long m = header[1];
  if (n < 1 || n > kMaxVertices) throw ParseError(1, "vertex count out of range");
  if (m < 0 || static_cast<std::size_t>(m) > cell_count(static_cast<int>(n))) {
    throw ParseError(1, "edge count out of range");
  }
  Graph g(static_cast<int>(n));
  std::size_t line_no = 1;
  for (long e = 0; e < m; ++e) {
    ++line_no;
    if (line_no > lines.size()) throw ParseError(line_no, "missing edge line");
    long uv[2];
    if (!parse_ints(lines[line_no - 1], uv)) throw ParseError(line_no, "malformed edge line");
    if (uv[0] < 1 || uv[1] > n) throw ParseError(line_no, "vertex out of range");
    if (uv[0] >= uv[1]) throw ParseError(line_no, "edge must satisfy u < v");
    const int u = static_cast<int>(uv[0]);
    const int v = static_cast<int>(uv[1]);
    if (g.has_edge(u, v)) throw ParseError(line_no, "duplicate edge");
    g.add_edge(u, v);
  }
  for (std::size_t extra = line_no; extra < lines.size(); ++extra) {
    if (!lines[extra].empty()) throw ParseError(extra + 1, "unexpected content after edges");
  }
  return g;
}

std::string emit_edge_list(const Graph& g) {
  std::ostringstream out;
  auto edges = g.edges();
  out << g.order() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// graph6

std::string emit_graph6(const Graph& g) {
  const int n = g.order();
  if (n < 1 || n > 62) throw std::invalid_argument("graph6 output supports 1 <= n <= 62");
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0;
  int bits = 0;
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

Graph parse_graph6(std::string_view line) {
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.empty()) throw std::invalid_argument("empty graph6 string");
  const int n = static_cast<unsigned char>(line[0]) - 63;
  if (n < 1 || n > 62) throw std::invalid_argument("unsupported graph6 vertex count");
  const std::size_t bits = cell_count(n);
  if (line.size() != 1 + (bits + 5) / 6) throw std::invalid_argument("graph6 string has wrong length");
  Graph g(n);
  std::size_t k = 0;
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i, ++k) {
      const int byte = static_cast<unsigned char>(line[1 + k / 6]) - 63;
      if (byte < 0 || byte > 63) throw std::invalid_argument("invalid graph6 character");
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace qsms
