#include "qsms/cardinality.hpp"

#include <stdexcept>
#include <vector>

namespace qsms {

using sat::Lit;

void cardinality_le(std::span<const Lit> lits, int k, sat::Solver& sink) {
  const int n = static_cast<int>(lits.size());
  if (k < 0) throw std::invalid_argument("cardinality bound must be non-negative");
  if (k >= n) return;
  if (k == 0) {
    for (Lit l : lits) sink.add_clause({~l});
    return;
  }
  // s[i][j] holds when at least j+1 of the first i+1 literals are true.
  std::vector<std::vector<Lit>> s(static_cast<std::size_t>(n - 1), std::vector<Lit>(static_cast<std::size_t>(k)));
  for (auto& row : s) {
    for (auto& l : row) l = Lit::positive(sink.new_var());
  }
  sink.add_clause({~lits[0], s[0][0]});
  for (int j = 1; j < k; ++j) sink.add_clause({~s[0][static_cast<std::size_t>(j)]});
  for (int i = 1; i < n - 1; ++i) {
    const auto& prev = s[static_cast<std::size_t>(i - 1)];
    const auto& cur = s[static_cast<std::size_t>(i)];
    const Lit x = lits[static_cast<std::size_t>(i)];
    sink.add_clause({~x, cur[0]});
    sink.add_clause({~prev[0], cur[0]});
    for (std::size_t j = 1; j < static_cast<std::size_t>(k); ++j) {
      sink.add_clause({~x, ~prev[j - 1], cur[j]});
      sink.add_clause({~prev[j], cur[j]});
    }
    sink.add_clause({~x, ~prev[static_cast<std::size_t>(k - 1)]});
  }
  sink.add_clause({~lits[static_cast<std::size_t>(n - 1)], ~s[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(k - 1)]});
}

void cardinality_ge(std::span<const Lit> lits, int k, sat::Solver& sink) {
  const int n = static_cast<int>(lits.size());
  if (k > n) {
    sink.add_clause(std::span<const Lit>{});
    return;
  }
  if (k <= 0) return;
  std::vector<Lit> negated;
  negated.reserve(lits.size());
  for (Lit l : lits) negated.push_back(~l);
  cardinality_le(negated, n - k, sink);
}

void cardinality_eq(std::span<const Lit> lits, int k, sat::Solver& sink) {
  if (k < 0 || k > static_cast<int>(lits.size())) throw std::invalid_argument("cardinality bound out of range");
  cardinality_le(lits, k, sink);
  cardinality_ge(lits, k, sink);
}

}  // namespace qsms
