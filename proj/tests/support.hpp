// Shared generators and brute-force helpers for the test suites.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qsms/circuit.hpp"
#include "qsms/graph.hpp"
#include "qsms/sat.hpp"

namespace qsms::testing {

inline Graph random_graph(int n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution edge(density);
  Graph g(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (edge(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

inline Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) image[static_cast<std::size_t>(v)] = v + 1;
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(image);
}

inline std::string var_name(int i) { return "x" + std::to_string(i); }

/// Random and/or DAG over x0..x(vars-1), occasionally with constants.
inline Circuit random_circuit(int vars, int gates, std::mt19937_64& rng) {
  Circuit c;
  std::vector<Circuit::Ref> pool;
  for (int i = 0; i < vars; ++i) pool.push_back(c.var(var_name(i)));
  std::uniform_int_distribution<int> arity(0, 4);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution rare(0.05);
  for (int g = 0; g < gates; ++g) {
    std::vector<Circuit::Ref> kids;
    const int a = arity(rng);
    for (int m = 0; m < a; ++m) {
      Circuit::Ref r = pool.empty() || rare(rng) ? Circuit::constant(coin(rng))
                                 : pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      kids.push_back(coin(rng) ? ~r : r);
    }
    pool.push_back(coin(rng) ? c.make_and(kids) : c.make_or(kids));
  }
  const Circuit::Ref out = pool.empty() ? Circuit::constant(coin(rng)) : pool.back();
  c.set_output(coin(rng) ? ~out : out);
  return c;
}

inline Assignment assignment_of(std::uint64_t bits, int vars, int offset = 0) {
  Assignment a;
  for (int i = 0; i < vars; ++i) a[var_name(i + offset)] = (bits >> i) & 1U;
  return a;
}

/// Bit vector of the truth table over x0..x(vars-1).
inline std::vector<bool> truth_table(const Circuit& c, int vars) {
  std::vector<bool> table;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars); ++bits) {
    table.push_back(evaluate(c, assignment_of(bits, vars)));
  }
  return table;
}

inline std::vector<sat::Clause> random_cnf(int vars, int clauses, int width, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, vars - 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<sat::Clause> out;
  for (int c = 0; c < clauses; ++c) {
    sat::Clause cl;
    std::set<int> used;
    while (static_cast<int>(cl.size()) < std::min(width, vars)) {
      const int v = pick(rng);
      if (!used.insert(v).second) continue;
      cl.push_back(sat::Lit::make(static_cast<sat::Var>(v), coin(rng)));
    }
    out.push_back(std::move(cl));
  }
  return out;
}

inline bool satisfies(const std::vector<sat::Clause>& cnf, std::uint64_t bits) {
  for (const auto& cl : cnf) {
    bool sat = false;
    for (auto l : cl) sat = sat || (((bits >> l.var()) & 1U) != l.is_negative());
    if (!sat) return false;
  }
  return true;
}

/// Random 2-QBF: exists x0..x(e-1), forall x(e)..x(e+u-1), random matrix.
inline Qbf random_qbf(int e, int u, int gates, std::mt19937_64& rng) {
  Qbf q;
  q.matrix = random_circuit(e + u, gates, rng);
  for (int i = 0; i < e; ++i) q.exists.push_back(var_name(i));
  for (int i = e; i < e + u; ++i) q.forall.push_back(var_name(i));
  return q;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int v = 1; v <= n; ++v) g.add_edge(v, v % n + 1);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i + 1, (i + 1) % 5 + 1);
    g.add_edge(i + 1, i + 6);
    g.add_edge(i + 6, (i + 2) % 5 + 6);
  }
  return g;
}

inline Graph octahedron() {
  Graph g = complete(6);
  g.remove_edge(1, 2);
  g.remove_edge(3, 4);
  g.remove_edge(5, 6);
  return g;
}

}  // namespace qsms::testing
