// Graphs, partially defined graphs, vertex permutations and cell orders.
//
// Vertices are numbered 1..n throughout. Only the upper triangle of the
// adjacency matrix is stored; a cell is a pair (i, j) with i < j.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsms {

/// Largest vertex count representable by Graph (adjacency rows are 64-bit masks).
inline constexpr int kMaxVertices = 64;

enum class CellState : std::uint8_t { Absent = 0, Present = 1, Undefined = 2 };

struct Cell {
  int i = 0;
  int j = 0;

  /// Normalizes an unordered pair so that i < j.
  static Cell of(int u, int v) { return u < v ? Cell{u, v} : Cell{v, u}; }

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Raised for malformed textual input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Number of cells of an n-vertex graph, n(n-1)/2.
constexpr std::size_t cell_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

class Permutation {
 public:
  /// image[v-1] is the image of vertex v. Must be a bijection on 1..n.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int v) const { return image_[static_cast<std::size_t>(v - 1)]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const;
  /// (this ∘ inner)(v) = this(inner(v)).
  Permutation compose(const Permutation& inner) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

class PartialGraph {
 public:
  explicit PartialGraph(int n, CellState fill = CellState::Undefined);

  int order() const { return n_; }
  CellState at(int u, int v) const { return cells_[index(u, v)]; }
  CellState at(Cell c) const { return at(c.i, c.j); }
  void set(int u, int v, CellState s) { cells_[index(u, v)] = s; }
  void set(Cell c, CellState s) { set(c.i, c.j, s); }

  bool is_total() const;
  std::size_t undefined_count() const;
  /// True iff every defined cell of `base` has the same state here.
  bool extends(const PartialGraph& base) const;

  friend bool operator==(const PartialGraph&, const PartialGraph&) = default;

 private:
  std::size_t index(int u, int v) const;

  int n_;
  std::vector<CellState> cells_;  // lex order of cells
};

class Graph {
 public:
  explicit Graph(int n = 0);

  /// Builds a graph from 1-based edge pairs; rejects loops and out-of-range ends.
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
  /// Requires a PartialGraph with no Undefined cell.
  static Graph from_partial(const PartialGraph& g);

  int order() const { return n_; }
  bool has_edge(int u, int v) const {
    return (rows_[static_cast<std::size_t>(u - 1)] >> (v - 1)) & 1U;
  }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  /// Bit (w-1) is set iff w is a neighbour of v.
  std::uint64_t neighbours(int v) const { return rows_[static_cast<std::size_t>(v - 1)]; }
  int degree(int v) const;
  std::size_t edge_count() const;
  /// Edges (u, v), u < v, in lex order.
  std::vector<std::pair<int, int>> edges() const;

  PartialGraph to_partial() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(int u, int v) const;

  int n_;
  std::vector<std::uint64_t> rows_;
};

enum class OrderKind { Lex, Colex };

/// The comparison order over the cells of an n-vertex graph.
class CellOrder {
 public:
  CellOrder(OrderKind kind, int n);

  OrderKind kind() const { return kind_; }
  int order() const { return n_; }
  std::span<const Cell> cells() const { return cells_; }
  /// Position of the cell in the sequence.
  std::size_t position(Cell c) const;

 private:
  OrderKind kind_;
  int n_;
  std::vector<Cell> cells_;
};

std::string_view to_string(OrderKind kind);
OrderKind parse_order_kind(std::string_view text);

Graph apply_permutation(const Graph& g, const Permutation& p);
PartialGraph apply_permutation(const PartialGraph& g, const Permutation& p);

std::vector<CellState> matrix_vector(const PartialGraph& g, const CellOrder& ord);
std::vector<CellState> matrix_vector(const Graph& g, const CellOrder& ord);

/// "n m" header followed by m lines "u v" with 1 <= u < v <= n.
Graph parse_edge_list(std::string_view text);
std::string emit_edge_list(const Graph& g);

/// Standard graph6 line (without trailing newline); 1 <= n <= 62.
std::string emit_graph6(const Graph& g);
Graph parse_graph6(std::string_view line);

}  // namespace qsms
