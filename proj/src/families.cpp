#include "qsms/families.hpp"

#include <charconv>
#include <stdexcept>

#include "qsms/oracle.hpp"

namespace qsms {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::None: return "none";
    case Family::TriangleFree: return "triangle-free";
    case Family::Folkman: return "folkman";
    case Family::Domination: return "domination";
    case Family::Treewidth: return "treewidth";
    case Family::Snark: return "snark";
    case Family::KochenSpecker: return "kochen-specker";
  }
  return "?";
}

Family parse_family(std::string_view text, ProblemSpec* spec) {
  for (Family f : {Family::None, Family::TriangleFree, Family::Folkman, Family::Domination, Family::Treewidth,
                   Family::Snark, Family::KochenSpecker}) {
    if (text == to_string(f)) return f;
  }
  constexpr std::string_view head = "triangle-free-non-";
  constexpr std::string_view tail = "-col";
  if (text.starts_with(head) && text.ends_with(tail) && text.size() > head.size() + tail.size()) {
    const auto digits = text.substr(head.size(), text.size() - head.size() - tail.size());
    int m = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && m >= 1) {
      if (spec) spec->k = m + 1;
      return Family::TriangleFree;
    }
  }
  throw std::invalid_argument("unknown problem '" + std::string(text) + "'");
}

void validate(const ProblemSpec& spec) {
  if (spec.n < 1 || spec.n > 62) throw std::invalid_argument("n must be between 1 and 62");
  if (spec.maximal && spec.family != Family::TriangleFree) {
    throw std::invalid_argument("--maximal only applies to triangle-free");
  }
  if (spec.critical && spec.family != Family::Treewidth) {
    throw std::invalid_argument("--critical only applies to treewidth");
  }
  switch (spec.family) {
    case Family::TriangleFree:
      if (spec.k != 0 && spec.k < 2) throw std::invalid_argument("triangle-free needs k >= 2");
      break;
    case Family::Folkman:
      if (spec.k < 3) throw std::invalid_argument("folkman needs k >= 3");
      break;
    case Family::Treewidth:
      if (spec.k < 1 || spec.k >= spec.n) throw std::invalid_argument("treewidth needs 1 <= k < n");
      break;
    default:
      if (spec.k != 0) throw std::invalid_argument(std::string(to_string(spec.family)) + " takes no k");
      break;
  }
}

Qbf encode_problem(const ProblemSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::None: return encode_unconstrained(spec.n);
    case Family::TriangleFree: return encode_triangle_free(spec.n, spec.k, spec.maximal);
    case Family::Folkman: return encode_folkman(spec.n, spec.k);
    case Family::Domination: return encode_domination(spec.n, spec.variant);
    case Family::Treewidth: return encode_treewidth_exact(spec.n, spec.k);
    case Family::Snark: return encode_snark(spec.n);
    case Family::KochenSpecker: return encode_kochen_specker(spec.n);
  }
  throw std::logic_error("unhandled family");
}

bool encoding_predicate(const ProblemSpec& spec, const Graph& g) {
  const auto r = oracle::connectivity_report(g);
  const int n = g.order();
  switch (spec.family) {
    case Family::None:
      return true;
    case Family::TriangleFree:
      if (!r.triangle_free) return false;
      if (spec.maximal && !oracle::is_maximal_triangle_free(g)) return false;
      return spec.k == 0 || !oracle::is_properly_k_colorable(g, spec.k - 1);
    case Family::Folkman:
      return !oracle::has_clique(g, spec.k) && oracle::folkman_check(g);
    case Family::Domination: {
      if (!r.cubic) return false;
      bool shape = true;
      switch (spec.variant) {
        case DominationVariant::ThreeConnected: shape = r.connected; break;
        case DominationVariant::Bipartite: shape = r.bipartite; break;
        case DominationVariant::Girth6: shape = r.girth == 0 || r.girth >= 6; break;
      }
      return shape && oracle::min_dominating_set_size(g) > (n + 2) / 3;
    }
    case Family::Treewidth:
      return oracle::treewidth(g) == spec.k;
    case Family::Snark:
      return r.cubic && r.connected && (r.girth == 0 || r.girth >= 5) && !oracle::is_3_edge_colorable(g);
    case Family::KochenSpecker:
      return r.square_free && n > 0 && r.min_degree >= 3 && r.every_vertex_on_triangle &&
             oracle::is_properly_k_colorable(g, 4) && !oracle::is_010_colorable(g);
  }
  return false;
}

bool post_filter(const ProblemSpec& spec, const Graph& g) {
  switch (spec.family) {
    case Family::Snark:
      return oracle::connectivity_report(g).two_connected;
    case Family::Domination:
      return spec.variant != DominationVariant::ThreeConnected || oracle::connectivity_report(g).three_connected;
    case Family::Treewidth:
      return !spec.critical || is_treewidth_critical(g, spec.k);
    default:
      return true;
  }
}

bool family_predicate(const ProblemSpec& spec, const Graph& g) {
  return encoding_predicate(spec, g) && post_filter(spec, g);
}

bool is_treewidth_critical(const Graph& g, int k) {
  if (oracle::treewidth(g) != k) return false;
  for (int v = 1; v <= g.order(); ++v) {
    if (g.degree(v) == 0) return false;
  }
  for (auto [u, v] : g.edges()) {
    if (oracle::treewidth(oracle::delete_edge(g, u, v)) >= k) return false;
    if (oracle::treewidth(oracle::contract_edge(g, u, v)) >= k) return false;
  }
  return true;
}

}  // namespace qsms
