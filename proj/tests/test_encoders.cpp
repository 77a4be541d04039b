#include <doctest.h>

#include <chrono>

#include "qsms/edge_vars.hpp"
#include "qsms/cegar.hpp"
#include "qsms/encoders.hpp"
#include "qsms/families.hpp"
#include "qsms/oracle.hpp"
#include "qsms/qcir.hpp"
#include "qsms/symmetry.hpp"
#include "support.hpp"

using namespace qsms;

namespace {

Graph graph_of_index(int n, std::uint32_t bits) {
  Graph g(n);
  std::uint32_t k = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++k) {
      if ((bits >> k) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

// Fixes the graph, then expands the remaining closed 2-QBF. Past 24
// quantified variables the closed formula goes to the CEGAR solver instead.
bool truth_for(const Qbf& q, const Graph& g) {
  Qbf fixed;
  fixed.matrix = simplify(substitute(q.matrix, assignment_from_graph(g)));
  const auto support = fixed.matrix.support();
  auto keep = [&](const std::vector<std::string>& block) {
    std::vector<std::string> out;
    for (const auto& name : block) {
      if (std::find(support.begin(), support.end(), name) != support.end()) out.push_back(name);
    }
    return out;
  };
  fixed.exists = keep(q.exists);
  fixed.forall = keep(q.forall);
  if (fixed.exists.size() + fixed.forall.size() <= 24) return oracle::qbf_truth_bruteforce(fixed, {});
  return CegarSolver(fixed).solve().has_value();
}

// Properties written against the oracle only.
bool expected(const ProblemSpec& s, const Graph& g) {
  const auto r = oracle::connectivity_report(g);
  const int n = g.order();
  switch (s.family) {
    case Family::None:
      return true;
    case Family::TriangleFree: {
      if (oracle::has_clique(g, 3)) return false;
      if (s.maximal) {
        for (int u = 1; u <= n; ++u) {
          for (int v = u + 1; v <= n; ++v) {
            if (g.has_edge(u, v)) continue;
            Graph h = g;
            h.add_edge(u, v);
            if (!oracle::has_clique(h, 3)) return false;
          }
        }
      }
      return s.k == 0 || oracle::chromatic_number(g) >= s.k;
    }
    case Family::Folkman:
      return !oracle::has_clique(g, s.k) && oracle::folkman_check(g);
    case Family::Domination: {
      bool cubic = true;
      for (int v = 1; v <= n; ++v) cubic = cubic && g.degree(v) == 3;
      if (!cubic || oracle::min_dominating_set_size(g) <= (n + 2) / 3) return false;
      if (s.variant == DominationVariant::Bipartite) return oracle::is_properly_k_colorable(g, 2);
      if (s.variant == DominationVariant::Girth6) return r.girth == 0 || r.girth >= 6;
      return r.connected;
    }
    case Family::Treewidth:
      return oracle::treewidth(g) == s.k;
    case Family::Snark:
      return r.cubic && r.connected && (r.girth == 0 || r.girth >= 5) && !oracle::is_3_edge_colorable(g);
    case Family::KochenSpecker:
      return r.square_free && r.min_degree >= 3 && r.every_vertex_on_triangle && oracle::chromatic_number(g) <= 4 &&
             !oracle::is_010_colorable(g);
  }
  return false;
}

void check_family(const ProblemSpec& s) {
  const Qbf q = encode_problem(s);
  CHECK(q.free == edge_vars(s.n));
  CHECK_NOTHROW(q.validate());
  const auto m = cell_count(s.n);
  for (std::uint32_t bits = 0; bits < (1U << m); ++bits) {
    const Graph g = graph_of_index(s.n, bits);
    CHECK_MESSAGE(truth_for(q, g) == expected(s, g), to_string(s.family) << " n=" << s.n << " k=" << s.k << " "
                                                                          << emit_graph6(g));
  }
}

Qbf qstatic_qbf(int n) {
  const CellOrder ord(OrderKind::Lex, n);
  Qbf q;
  q.matrix = encode_qstatic_minimality(ord);
  q.free = edge_vars(n);
  q.forall = qstatic_perm_vars(n);
  return q;
}

}  // namespace

TEST_CASE("static minimality on tiny orders") {
  const Qbf one = qstatic_qbf(1);
  CHECK(Circuit::is_constant(simplify(one.matrix).output()));
  CHECK(truth_for(one, Graph(1)));

  const Qbf three = qstatic_qbf(3);
  CHECK_FALSE(truth_for(three, Graph::from_edges(3, std::vector<std::pair<int, int>>{{1, 2}})));
  CHECK(truth_for(three, Graph::from_edges(3, std::vector<std::pair<int, int>>{{2, 3}})));
  CHECK(truth_for(qstatic_qbf(2), testing::complete(2)));
}

TEST_CASE("static minimality accepts exactly the canonical graphs") {
  for (int n = 2; n <= 4; ++n) {
    const Qbf q = qstatic_qbf(n);
    const CellOrder ord(OrderKind::Lex, n);
    std::size_t accepted = 0;
    for (std::uint32_t bits = 0; bits < (1U << cell_count(n)); ++bits) {
      const Graph g = graph_of_index(n, bits);
      const bool minimal = matrix_vector(g, ord) == matrix_vector(oracle::canonical_form(g), ord);
      const bool verdict = truth_for(q, g);
      CHECK(verdict == minimal);
      if (verdict) ++accepted;
    }
    CHECK(accepted == std::vector<std::size_t>{2, 4, 11}[static_cast<std::size_t>(n - 2)]);
  }
}

TEST_CASE("static minimality augmentation") {
  const Qbf base = encode_triangle_free(4, 3);
  const Qbf aug = augment_with_qstatic(base, CellOrder(OrderKind::Lex, 4));
  CHECK(aug.free == base.free);
  CHECK(aug.exists == base.exists);
  CHECK(aug.forall.size() == base.forall.size() + 16);
  CHECK_NOTHROW(aug.validate());

  // A clash with p_i_j is resolved by lengthening the prefix.
  Qbf clash = encode_unconstrained(3);
  clash.forall.push_back("p_1_1");
  clash.matrix.set_output(clash.matrix.make_or({clash.matrix.output(), clash.matrix.var("p_1_1")}));
  const Qbf resolved = augment_with_qstatic(clash, CellOrder(OrderKind::Lex, 3));
  CHECK(std::count(resolved.forall.begin(), resolved.forall.end(), "pp_1_1") == 1);

  Qbf wrong = encode_unconstrained(3);
  wrong.free.pop_back();
  CHECK_THROWS_AS(augment_with_qstatic(wrong, CellOrder(OrderKind::Lex, 3)), std::invalid_argument);
}

TEST_CASE("unconstrained encoding") {
  const Qbf q = encode_unconstrained(4);
  CHECK(q.free.size() == 6);
  CHECK(q.exists.empty());
  CHECK(q.forall.empty());
  CHECK(evaluate(q.matrix, assignment_from_graph(Graph(4))));
}

TEST_CASE("triangle-free encodings match the oracle") {
  for (int n = 1; n <= 5; ++n) {
    check_family({Family::TriangleFree, n, 0});
    check_family({Family::TriangleFree, n, 3});
    check_family({Family::TriangleFree, n, 0, true});
    check_family({Family::TriangleFree, n, 3, true});
  }
  check_family({Family::TriangleFree, 4, 2});
  CHECK_THROWS_AS(encode_triangle_free(4, 1), std::invalid_argument);
  const Qbf q = encode_triangle_free(5, 4);
  CHECK(q.forall.size() == 5 * 3);
  CHECK(encode_triangle_free(5, 0).forall.empty());
}

TEST_CASE("folkman encoding matches the oracle") {
  for (int n = 1; n <= 5; ++n) {
    check_family({Family::Folkman, n, 3});
    check_family({Family::Folkman, n, 4});
  }
  CHECK_THROWS_AS(encode_folkman(5, 2), std::invalid_argument);
}

TEST_CASE("domination encodings match the oracle") {
  for (auto v : {DominationVariant::ThreeConnected, DominationVariant::Bipartite, DominationVariant::Girth6}) {
    for (int n = 1; n <= 6; ++n) check_family({Family::Domination, n, 0, false, v});
  }
  CHECK(to_string(DominationVariant::Girth6) == "girth6");
  CHECK(parse_domination_variant("3conn") == DominationVariant::ThreeConnected);
  CHECK_THROWS_AS(parse_domination_variant("planar"), std::invalid_argument);
}

TEST_CASE("treewidth encoding matches the oracle") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) check_family({Family::Treewidth, n, k});
  }
  CHECK_THROWS_AS(encode_treewidth_exact(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(encode_treewidth_exact(4, 4), std::invalid_argument);
}

TEST_CASE("snark encoding matches the oracle") {
  for (int n = 1; n <= 6; ++n) check_family({Family::Snark, n});
}

TEST_CASE("kochen-specker encoding matches the oracle") {
  for (int n = 1; n <= 6; ++n) check_family({Family::KochenSpecker, n});
}

TEST_CASE("encodings of larger graphs still agree on sampled graphs") {
  // Universal blocks are small enough here for brute force once the graph is fixed.
  std::mt19937_64 rng(91);
  const std::vector<ProblemSpec> specs{{Family::TriangleFree, 7, 4}, {Family::Folkman, 6, 3}, {Family::TriangleFree, 6, 0, true}};
  for (const auto& s : specs) {
    const Qbf q = encode_problem(s);
    for (int round = 0; round < 40; ++round) {
      const Graph g = testing::random_graph(s.n, rng, 0.4);
      CHECK(truth_for(q, g) == expected(s, g));
    }
  }
  const Qbf c5 = encode_triangle_free(5, 3);
  CHECK(truth_for(c5, testing::cycle(5)));
  Graph c4_plus(5);
  for (const auto& [u, v] : testing::cycle(4).edges()) c4_plus.add_edge(u, v);
  CHECK_FALSE(truth_for(c5, c4_plus));
  CHECK_FALSE(truth_for(encode_folkman(6, 3), testing::complete(6)));
}

TEST_CASE("emitted encodings parse back to equivalent formulas") {
  const Qbf q = encode_triangle_free(4, 3);
  const Qbf back = parse_qcir(emit_qcir(q));
  CHECK(back.free == q.free);
  CHECK(back.forall == q.forall);
  for (std::uint32_t bits = 0; bits < 64; ++bits) {
    const Graph g = graph_of_index(4, bits);
    CHECK(truth_for(back, g) == truth_for(q, g));
  }
}
