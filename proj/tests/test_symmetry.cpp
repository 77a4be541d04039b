#include <doctest.h>

#include "qsms/oracle.hpp"
#include "qsms/symmetry.hpp"
#include "support.hpp"

using namespace qsms;

namespace {

Graph graph_of_bits(std::uint32_t bits, const CellOrder& ord) {
  Graph g(ord.order());
  for (std::size_t t = 0; t < ord.cells().size(); ++t) {
    if ((bits >> t) & 1U) g.add_edge(ord.cells()[t].i, ord.cells()[t].j);
  }
  return g;
}

bool vector_less(const Graph& a, const Graph& b, const CellOrder& ord) {
  return matrix_vector(a, ord) < matrix_vector(b, ord);
}

sat::Var cell_var(Cell c) { return static_cast<sat::Var>(c.i * 10 + c.j); }

}  // namespace

TEST_CASE("is_canonical on small examples") {
  const CellOrder lex(OrderKind::Lex, 3);
  for (int n = 1; n <= 6; ++n) CHECK(is_canonical(Graph(n), CellOrder(OrderKind::Lex, n)));
  CHECK(is_canonical(Graph::from_edges(3, std::vector<std::pair<int, int>>{{2, 3}}), lex));
  CHECK_FALSE(is_canonical(Graph::from_edges(3, std::vector<std::pair<int, int>>{{1, 2}}), lex));
}

TEST_CASE("exactly one canonical member per isomorphism class") {
  const std::vector<std::size_t> classes{1, 2, 4, 11, 34, 156, 1044};
  for (OrderKind kind : {OrderKind::Lex, OrderKind::Colex}) {
    for (int n = 1; n <= 7; ++n) {
      if (n == 7 && kind == OrderKind::Colex) continue;
      const CellOrder ord(kind, n);
      const auto m = cell_count(n);
      std::size_t count = 0;
      for (std::uint32_t bits = 0; bits < (1U << m); ++bits) {
        if (is_canonical(graph_of_bits(bits, ord), ord)) ++count;
      }
      CHECK_MESSAGE(count == classes[static_cast<std::size_t>(n - 1)], "n=" << n << " order=" << to_string(kind));
    }
  }
}

TEST_CASE("canonical sets agree with the oracle sweep") {
  for (OrderKind kind : {OrderKind::Lex, OrderKind::Colex}) {
    for (int n = 1; n <= 6; ++n) {
      const CellOrder ord(kind, n);
      std::vector<Graph> mine;
      for (std::uint32_t bits = 0; bits < (1U << cell_count(n)); ++bits) {
        const Graph g = graph_of_bits(bits, ord);
        if (is_canonical(g, ord)) mine.push_back(g);
      }
      auto reference = oracle::enumerate_canonical(n, kind);
      auto key = [&](const Graph& g) { return matrix_vector(g, ord); };
      std::sort(mine.begin(), mine.end(), [&](const Graph& a, const Graph& b) { return key(a) < key(b); });
      CHECK(mine == reference);
    }
  }
}

TEST_CASE("find_smaller_copy returns a genuinely smaller copy") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Graph g = testing::random_graph(n, rng);
    for (OrderKind kind : {OrderKind::Lex, OrderKind::Colex}) {
      const CellOrder ord(kind, n);
      const auto p = find_smaller_copy(g, ord);
      CHECK(p.has_value() != is_canonical(g, ord));
      if (p) CHECK(vector_less(apply_permutation(g, *p), g, ord));
    }
  }
}

TEST_CASE("canonical_form is a class invariant") {
  std::mt19937_64 rng(5);
  const CellOrder lex4(OrderKind::Lex, 4);
  Graph path = Graph::from_edges(4, std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}});
  CHECK(canonical_form(path, lex4) == oracle::canonical_form(path, OrderKind::Lex));
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Graph g = testing::random_graph(n, rng);
    for (OrderKind kind : {OrderKind::Lex, OrderKind::Colex}) {
      const CellOrder ord(kind, n);
      const Graph c = canonical_form(g, ord);
      CHECK(is_canonical(c, ord));
      CHECK(canonical_form(c, ord) == c);
      CHECK(canonical_form(apply_permutation(g, testing::random_permutation(n, rng)), ord) == c);
      CHECK(oracle::isomorphic(c, g));
      if (n <= 7) CHECK(c == oracle::canonical_form(g, kind));
    }
  }
}

TEST_CASE("check_partial on the documented partial example") {
  const CellOrder lex(OrderKind::Lex, 3);
  CHECK(check_partial(PartialGraph(3), lex).canonical());

  PartialGraph g(3);
  g.set(1, 2, CellState::Present);
  g.set(2, 3, CellState::Absent);
  const auto verdict = check_partial(g, lex);
  REQUIRE_FALSE(verdict.canonical());
  const auto& v = *verdict.violation;
  const auto clause = violation_to_clause(v, cell_var);
  std::vector<sat::Lit> expected{sat::Lit::negative(cell_var({1, 2})), sat::Lit::positive(cell_var({2, 3}))};
  auto sorted = clause;
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  CHECK(sorted == expected);
  for (CellState s : {CellState::Absent, CellState::Present}) {
    PartialGraph ext = g;
    ext.set(1, 3, s);
    const Graph full = Graph::from_partial(ext);
    CHECK(vector_less(apply_permutation(full, v.witness), full, lex));
  }
}

TEST_CASE("check_partial is sound on partial inputs and complete on total ones") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 6; ++n) {
    for (OrderKind kind : {OrderKind::Lex, OrderKind::Colex}) {
      const CellOrder ord(kind, n);
      const auto m = cell_count(n);
      if (n <= 5) {
        for (std::uint32_t bits = 0; bits < (1U << m); ++bits) {
          const Graph g = graph_of_bits(bits, ord);
          CHECK(check_partial(g.to_partial(), ord).canonical() == is_canonical(g, ord));
        }
      }
      for (int round = 0; round < 200; ++round) {
        PartialGraph g(n);
        for (const Cell c : ord.cells()) {
          const auto r = rng() % 3;
          g.set(c, r == 0 ? CellState::Absent : r == 1 ? CellState::Present : CellState::Undefined);
        }
        const auto verdict = check_partial(g, ord);
        if (verdict.canonical()) continue;
        const auto& v = *verdict.violation;
        PartialGraph restricted(n);
        for (const auto& [cell, state] : v.consulted) {
          CHECK(g.at(cell) == state);
          CHECK(state != CellState::Undefined);
          restricted.set(cell, state);
        }
        // Every completion of the consulted cells is beaten by the witness.
        for (int sample = 0; sample < 20; ++sample) {
          PartialGraph ext = restricted;
          for (const Cell c : ord.cells()) {
            if (ext.at(c) == CellState::Undefined) ext.set(c, rng() % 2 ? CellState::Present : CellState::Absent);
          }
          const Graph full = Graph::from_partial(ext);
          CHECK(vector_less(apply_permutation(full, v.witness), full, ord));
        }
        // The clause is falsified exactly by the assignments that agree with the consulted cells.
        const auto clause = violation_to_clause(v, cell_var);
        CHECK(clause.size() == v.consulted.size());
      }
    }
  }
}

TEST_CASE("certify_violation recomputes the consulted cells") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Graph g = testing::random_graph(n, rng);
    const CellOrder ord(OrderKind::Lex, n);
    const auto p = find_smaller_copy(g, ord);
    if (!p) {
      const auto id = certify_violation(g.to_partial(), ord, Permutation::identity(n));
      CHECK_FALSE(id.has_value());
      continue;
    }
    const auto v = certify_violation(g.to_partial(), ord, *p);
    REQUIRE(v.has_value());
    CHECK(v->witness == *p);
    CHECK_FALSE(v->consulted.empty());
  }
}

TEST_CASE("a node limit never rejects a canonical graph") {
  SymmetryOptions capped;
  capped.node_limit = 3;
  std::mt19937_64 rng(19);
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Graph g = testing::random_graph(n, rng);
    const CellOrder ord(OrderKind::Lex, n);
    if (is_canonical(g, ord)) CHECK(check_partial(g.to_partial(), ord, capped).canonical());
  }
}
