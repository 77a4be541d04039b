#include <doctest.h>

#include "qsms/cegar.hpp"
#include "qsms/edge_vars.hpp"
#include "qsms/encoders.hpp"
#include "qsms/families.hpp"
#include "qsms/oracle.hpp"
#include "qsms/qcir.hpp"
#include "support.hpp"

using namespace qsms;

namespace {

std::vector<Graph> enumerate_graphs(const Qbf& q, int n, CegarOptions opts) {
  CegarSolver solver(q, opts);
  std::vector<Graph> out;
  const auto summary = solver.enumerate(0, [&](const Assignment& a) {
    out.push_back(graph_from_assignment(n, a));
    return true;
  });
  CHECK(summary.complete);
  CHECK(summary.count == out.size());
  return out;
}

CegarOptions with_sms(bool on) {
  CegarOptions o;
  o.sms = on;
  return o;
}

}  // namespace

TEST_CASE("the introductory example is true") {
  const Qbf q = parse_qcir("#QCIR-G14\nexists(x, y)\nforall(z)\noutput(g2)\ng1 = and(x, -y)\ng2 = or(g1, z)\n");
  CegarSolver solver(q);
  CHECK(solver.stats().iterations == 0);
  CHECK(solver.stats().refinements == 0);
  const auto w = solver.solve();
  REQUIRE(w.has_value());
  CHECK(w->at("x"));
  CHECK_FALSE(w->at("y"));
}

TEST_CASE("small hand-checked 2-QBFs") {
  const Qbf both = parse_qcir("#QCIR-G14\nexists(x)\nforall(z)\noutput(g)\na = or(x, z)\nb = or(-x, -z)\ng = and(a, b)\n");
  CHECK_FALSE(CegarSolver(both).solve().has_value());
  const Qbf one = parse_qcir("#QCIR-G14\nexists(x)\nforall(z)\noutput(g)\ng = or(x, z)\n");
  const auto w = CegarSolver(one).solve();
  REQUIRE(w.has_value());
  CHECK(w->at("x"));
  const Qbf only_forall = parse_qcir("#QCIR-G14\nforall(z)\noutput(z)\n");
  CHECK_FALSE(CegarSolver(only_forall).solve().has_value());
}

TEST_CASE("an empty universal block is plain SAT") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 100; ++round) {
    const Qbf q = testing::random_qbf(6, 0, 1 + static_cast<int>(rng() % 15), rng);
    bool expected = false;
    for (std::uint64_t bits = 0; bits < 64 && !expected; ++bits) expected = evaluate(q.matrix, testing::assignment_of(bits, 6));
    CHECK(CegarSolver(q).solve().has_value() == expected);
  }
}

TEST_CASE("agreement with brute-force expansion on random 2-QBFs") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 500; ++round) {
    const int e = static_cast<int>(rng() % 5);
    const int u = static_cast<int>(rng() % 5);
    const Qbf q = testing::random_qbf(e, u, 1 + static_cast<int>(rng() % 20), rng);
    const bool expected = oracle::qbf_truth_bruteforce(q, {});
    for (bool strip : {true, false}) {
      CegarOptions opts;
      opts.strip = strip;
      CegarSolver solver(q, opts);
      const auto w = solver.solve();
      CHECK(w.has_value() == expected);
      if (w) {
        // The witness wins against every universal assignment.
        Qbf fixed = q;
        fixed.matrix = substitute(q.matrix, *w);
        fixed.exists.clear();
        CHECK(oracle::qbf_truth_bruteforce(fixed, {}));
      }
    }
  }
}

TEST_CASE("existential conjuncts are stripped") {
  const Qbf q = encode_triangle_free(4, 3);
  const auto s = strip_existential_conjuncts(q);
  CHECK(s.existential_parts.size() == 4);
  CHECK(s.rest.forall == q.forall);
  const auto support = s.rest.matrix.support();
  CHECK(std::any_of(support.begin(), support.end(), [](const std::string& n) { return n.starts_with("c_"); }));
  for (const auto& part : s.existential_parts) {
    for (const auto& name : part.support()) CHECK(name.starts_with("e_"));
  }

  const Qbf plain = parse_qcir("#QCIR-G14\nexists(x)\nforall(z)\noutput(g)\ng = or(x, z)\n");
  CHECK(strip_existential_conjuncts(plain).existential_parts.empty());
}

TEST_CASE("stripping does not change answers on the families") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<Qbf> instances{encode_unconstrained(n), encode_triangle_free(n, 0), encode_triangle_free(n, 3),
                               encode_folkman(n, 3), encode_domination(n, DominationVariant::Bipartite),
                               encode_snark(n), encode_kochen_specker(n)};
    if (n >= 2) instances.push_back(encode_treewidth_exact(n, n - 1));
    for (const auto& q : instances) {
      CegarOptions a, b;
      b.strip = false;
      CHECK(CegarSolver(q, a).solve().has_value() == CegarSolver(q, b).solve().has_value());
    }
  }
}

TEST_CASE("triangle-free non-colourable decisions") {
  const auto c5 = CegarSolver(encode_triangle_free(5, 3), with_sms(true)).solve();
  REQUIRE(c5.has_value());
  CHECK(oracle::isomorphic(graph_from_assignment(5, *c5), testing::cycle(5)));
  CHECK_FALSE(CegarSolver(encode_triangle_free(4, 3), with_sms(true)).solve().has_value());
  CHECK_FALSE(CegarSolver(encode_triangle_free(2, 3)).solve().has_value());
  CHECK_FALSE(CegarSolver(encode_triangle_free(2, 5)).solve().has_value());
}

TEST_CASE("enumeration counts") {
  const std::vector<std::size_t> classes{1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) {
    const auto graphs = enumerate_graphs(encode_unconstrained(n), n, with_sms(true));
    CHECK(graphs.size() == classes[static_cast<std::size_t>(n - 1)]);
    for (const auto& g : graphs) CHECK(is_canonical(g, CellOrder(OrderKind::Lex, n)));
  }
  CHECK(enumerate_graphs(encode_unconstrained(3), 3, with_sms(false)).size() == 8);
  CHECK(enumerate_graphs(encode_triangle_free(5, 0), 5, with_sms(true)).size() == 14);
  CegarOptions colex = with_sms(true);
  colex.order = OrderKind::Colex;
  CHECK(enumerate_graphs(encode_unconstrained(5), 5, colex).size() == 34);
}

TEST_CASE("enumeration limit marks truncation") {
  CegarSolver solver(encode_unconstrained(4), with_sms(true));
  const auto s = solver.enumerate(5, [](const Assignment&) { return true; });
  CHECK(s.count == 5);
  CHECK_FALSE(s.complete);
  CegarSolver exact(encode_unconstrained(4), with_sms(true));
  const auto t = exact.enumerate(11, [](const Assignment&) { return true; });
  CHECK(t.count == 11);
  CHECK(t.complete);
}

TEST_CASE("blocking ranges over free variables only") {
  // Two existential witnesses for the same free value must not yield two solutions.
  const Qbf q = parse_qcir("#QCIR-G14\nfree(f)\nexists(x)\noutput(g)\ng = or(f, x)\n");
  CegarSolver solver(q);
  std::vector<Assignment> seen;
  solver.enumerate(0, [&](const Assignment& a) {
    seen.push_back(a);
    return true;
  });
  CHECK(seen.size() == 2);
  for (const auto& a : seen) CHECK(a.size() == 1);
}

TEST_CASE("symmetry breaking needs edge-shaped free variables") {
  const Qbf q = parse_qcir("#QCIR-G14\nfree(f)\noutput(f)\n");
  CHECK_THROWS_AS(CegarSolver(q, with_sms(true)), std::invalid_argument);
  Qbf bad = encode_unconstrained(3);
  bad.forall.push_back(bad.free.front());
  CHECK_THROWS_AS(CegarSolver{bad}, std::invalid_argument);
}

TEST_CASE("SMS transparency and agreement with static minimality") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<ProblemSpec> specs;
    specs.push_back({Family::None, n});
    specs.push_back({Family::TriangleFree, n, 0});
    specs.push_back({Family::TriangleFree, n, 3});
    specs.push_back({Family::TriangleFree, n, 0, true});
    specs.push_back({Family::Folkman, n, 3});
    specs.push_back({Family::KochenSpecker, n});
    if (n >= 2) specs.push_back({Family::Treewidth, n, n - 1});
    if (n >= 3) specs.push_back({Family::Treewidth, n, 2});
    for (const auto& spec : specs) {
      const Qbf q = encode_problem(spec);
      const CellOrder ord(OrderKind::Lex, n);
      auto sms = enumerate_graphs(q, n, with_sms(true));
      auto plain = enumerate_graphs(q, n, with_sms(false));
      auto stat = enumerate_graphs(augment_with_qstatic(q, ord), n, with_sms(false));
      std::set<std::vector<CellState>> a, b, c, d;
      for (const auto& g : sms) a.insert(matrix_vector(g, ord));
      for (const auto& g : plain) b.insert(matrix_vector(oracle::canonical_form(g), ord));
      for (const auto& g : stat) c.insert(matrix_vector(g, ord));
      for (const auto& g : oracle::enumerate_canonical(n, OrderKind::Lex, [&](const Graph& g) { return encoding_predicate(spec, g); })) {
        d.insert(matrix_vector(g, ord));
      }
      CHECK_MESSAGE(a == b, to_string(spec.family) << " n=" << n);
      CHECK_MESSAGE(a == c, to_string(spec.family) << " n=" << n);
      CHECK_MESSAGE(a == d, to_string(spec.family) << " n=" << n);
      CHECK(a.size() == sms.size());
      CHECK(c.size() == stat.size());
    }
  }
}

TEST_CASE("colouring counterexamples reduce to one clause") {
  Assignment mono;
  for (int v = 1; v <= 3; ++v) {
    mono["c_" + std::to_string(v) + "_1"] = true;
    mono["c_" + std::to_string(v) + "_2"] = false;
  }
  CHECK(ccl_refinement_view(3, 2, mono) == std::vector<Cell>{{1, 2}, {1, 3}, {2, 3}});

  Assignment missing = mono;
  missing.erase("c_2_2");
  CHECK_THROWS_AS(ccl_refinement_view(3, 2, missing), std::invalid_argument);
  Assignment blank = mono;
  blank["c_2_1"] = false;
  CHECK_THROWS_AS(ccl_refinement_view(3, 2, blank), std::invalid_argument);

  // A proper 2-colouring of C4 rules out C4 itself.
  Assignment two;
  for (int v = 1; v <= 4; ++v) {
    two["c_" + std::to_string(v) + "_1"] = v % 2 == 1;
    two["c_" + std::to_string(v) + "_2"] = v % 2 == 0;
  }
  const auto pairs = ccl_refinement_view(4, 2, two);
  const Graph c4 = testing::cycle(4);
  for (const Cell c : pairs) CHECK_FALSE(c4.has_edge(c.i, c.j));
}
