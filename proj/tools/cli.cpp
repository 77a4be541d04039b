#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qsms/cegar.hpp"
#include "qsms/edge_vars.hpp"
#include "qsms/encoders.hpp"
#include "qsms/families.hpp"
#include "qsms/graph.hpp"
#include "qsms/oracle.hpp"
#include "qsms/qcir.hpp"

namespace qsms::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string problem;
  int n = 0;
  int k = 0;
  bool maximal = false;
  std::string variant = "3conn";
  bool critical = false;
  bool qstatic = false;
  std::string sms = "auto";
  std::string order = "lex";
  std::string format;
  std::uint64_t limit = 0;
  std::uint64_t seed = 0;
  std::string input;
  std::string output;
  bool stats = true;
};

void add_problem_options(CLI::App& cmd, Config& cfg, bool required) {
  auto* p = cmd.add_option("--problem", cfg.problem,
                           "none, triangle-free, folkman, domination, treewidth, snark, kochen-specker");
  if (required) p->required();
  cmd.add_option("--n", cfg.n, "number of vertices");
  cmd.add_option("--k", cfg.k, "family parameter (colours, clique size or treewidth)");
  cmd.add_flag("--maximal", cfg.maximal, "triangle-free: only maximal triangle-free graphs");
  cmd.add_option("--variant", cfg.variant, "domination: 3conn, bipartite or girth6");
  cmd.add_flag("--critical", cfg.critical, "treewidth: keep only critical graphs");
}

ProblemSpec make_spec(const Config& cfg, int n) {
  ProblemSpec spec;
  spec.k = cfg.k;
  try {
    spec.family = parse_family(cfg.problem, &spec);
    if (cfg.k != 0) spec.k = cfg.k;
    spec.n = n;
    spec.maximal = cfg.maximal;
    spec.critical = cfg.critical;
    if (spec.family == Family::Domination) spec.variant = parse_domination_variant(cfg.variant);
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

OrderKind order_of(const Config& cfg) {
  try {
    return parse_order_kind(cfg.order);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_all(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << file.rdbuf();
  return s.str();
}

// The instance from a QCIR file when one is given, else from the family flags.
Qbf load_instance(const Config& cfg, std::istream& in, std::optional<ProblemSpec>& spec) {
  Qbf q;
  if (!cfg.input.empty()) {
    if (!cfg.problem.empty()) throw UsageError("give either a QCIR file or --problem, not both");
    try {
      q = parse_qcir(read_all(cfg.input, in));
    } catch (const ParseError& e) {
      throw UsageError(std::string("QCIR: ") + e.what());
    }
  } else {
    if (cfg.problem.empty()) throw UsageError("--problem or a QCIR file is required");
    if (cfg.n < 1) throw UsageError("--n must be positive");
    spec = make_spec(cfg, cfg.n);
    q = encode_problem(*spec);
  }
  if (cfg.qstatic) {
    const auto n = q.free.empty() ? std::optional<int>(spec ? spec->n : 1) : edge_vertex_count(q.free);
    if (!n) throw UsageError("--qstatic needs edge variables as the free block");
    try {
      q = augment_with_qstatic(q, CellOrder(order_of(cfg), *n));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return q;
}

// Vertex count of the graphs described by the free block, if it is one.
std::optional<int> graph_order(const Qbf& q, const std::optional<ProblemSpec>& spec) {
  if (spec) return spec->n;
  return edge_vertex_count(q.free);
}

CegarOptions solver_options(const Config& cfg, const Qbf& q, const std::optional<ProblemSpec>& spec) {
  CegarOptions opts;
  opts.order = order_of(cfg);
  opts.seed = cfg.seed;
  const bool graphs = graph_order(q, spec).has_value();
  if (cfg.sms == "on") {
    if (!graphs) throw UsageError("--sms on needs edge variables as the free block");
    opts.sms = true;
  } else if (cfg.sms == "auto") {
    opts.sms = graphs;
  } else if (cfg.sms != "off") {
    throw UsageError("--sms takes on or off");
  }
  return opts;
}

void print_stats(std::ostream& err, const CegarSolver& solver, std::chrono::steady_clock::duration elapsed) {
  const auto& s = solver.stats();
  err << "iterations=" << s.iterations << '\n'
      << "refinements=" << s.refinements << '\n'
      << "sms_checks=" << s.sms_checks << '\n'
      << "sms_rejections=" << s.sms_rejections << '\n'
      << "solutions=" << s.solutions << '\n'
      << "wall_ms=" << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << '\n';
}

void print_graph(std::ostream& out, const Graph& g, const std::string& format) {
  if (format == "graph6") {
    out << emit_graph6(g) << '\n';
  } else {
    out << emit_edge_list(g) << '\n';
  }
}

void print_assignment(std::ostream& out, const Assignment& a, const std::vector<std::string>& names) {
  for (std::size_t m = 0; m < names.size(); ++m) out << (m ? " " : "") << names[m] << '=' << (a.at(names[m]) ? 1 : 0);
  out << '\n';
}

std::string checked_format(const std::string& format, const char* fallback) {
  const std::string f = format.empty() ? fallback : format;
  if (f != "graph6" && f != "edgelist") throw UsageError("--format takes graph6 or edgelist");
  return f;
}

int cmd_encode(const Config& cfg, std::istream& in, std::ostream& out) {
  if (cfg.problem.empty()) throw UsageError("--problem is required");
  Config c = cfg;
  c.input.clear();
  std::optional<ProblemSpec> spec;
  const Qbf q = load_instance(c, in, spec);
  const std::string text = emit_qcir(q);
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + cfg.output + "'");
    file << text;
  }
  return 0;
}

int cmd_solve(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::optional<ProblemSpec> spec;
  const Qbf q = load_instance(cfg, in, spec);
  const auto start = std::chrono::steady_clock::now();
  CegarSolver solver(q, solver_options(cfg, q, spec));
  const auto witness = solver.solve();
  if (cfg.stats) print_stats(err, solver, std::chrono::steady_clock::now() - start);
  if (!witness) {
    out << "FALSE\n";
    return 20;
  }
  out << "TRUE\n";
  if (const auto n = graph_order(q, spec)) {
    print_graph(out, graph_from_assignment(*n, *witness), checked_format(cfg.format, "edgelist"));
  } else if (!q.free.empty()) {
    print_assignment(out, *witness, q.free);
  }
  return 10;
}

int cmd_enumerate(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::optional<ProblemSpec> spec;
  const Qbf q = load_instance(cfg, in, spec);
  const std::string format = checked_format(cfg.format, "graph6");
  const auto n = graph_order(q, spec);
  const auto start = std::chrono::steady_clock::now();
  CegarSolver solver(q, solver_options(cfg, q, spec));
  const auto summary = solver.enumerate(cfg.limit, [&](const Assignment& a) {
    if (!n) {
      print_assignment(out, a, q.free);
      return true;
    }
    const Graph g = graph_from_assignment(*n, a);
    if (spec && !post_filter(*spec, g)) return false;
    print_graph(out, g, format);
    return true;
  });
  out << "count=" << summary.count << " complete=" << (summary.complete ? "true" : "false") << '\n';
  if (cfg.stats) print_stats(err, solver, std::chrono::steady_clock::now() - start);
  return 0;
}

// Splits check input into graphs; edge lists are blank-line separated blocks.
struct ParsedGraph {
  std::size_t line = 0;
  std::optional<Graph> graph;
  std::string error;
};

std::vector<ParsedGraph> parse_graphs(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream s(text);
    for (std::string line; std::getline(s, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      // enumerate's summary line; '=' never occurs in graph6 or edge lists
      if (line.starts_with("count=")) line.clear();
      lines.push_back(line);
    }
  }
  auto blank = [](const std::string& l) { return l.find_first_not_of(" \t") == std::string::npos; };
  std::vector<ParsedGraph> out;
  bool edge_lists = false;
  for (const auto& l : lines) {
    if (blank(l)) continue;
    edge_lists = l.find_first_of(" \t") != std::string::npos;
    break;
  }
  if (!edge_lists) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (blank(lines[i])) continue;
      ParsedGraph p;
      p.line = i + 1;
      try {
        p.graph = parse_graph6(lines[i]);
      } catch (const std::exception& e) {
        p.error = "line " + std::to_string(i + 1) + ": " + e.what();
      }
      out.push_back(std::move(p));
    }
    return out;
  }
  for (std::size_t i = 0; i < lines.size();) {
    if (blank(lines[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::string block;
    while (j < lines.size() && !blank(lines[j])) block += lines[j++] + '\n';
    ParsedGraph p;
    p.line = i + 1;
    try {
      p.graph = parse_edge_list(block);
    } catch (const ParseError& e) {
      p.error = "line " + std::to_string(i + e.line()) + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
    i = j;
  }
  return out;
}

int cmd_check(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto graphs = parse_graphs(read_all(cfg.input, in));
  out << std::boolalpha;
  if (!cfg.problem.empty()) make_spec(cfg, std::max(cfg.k + 1, 2));  // validate the flags early
  int status = 0;
  std::size_t index = 0;
  for (const auto& p : graphs) {
    if (!p.graph) {
      err << "error: " << p.error << '\n';
      status = 1;
      continue;
    }
    const Graph& g = *p.graph;
    const auto r = oracle::connectivity_report(g);
    out << "graph=" << ++index << " n=" << g.order() << " m=" << g.edge_count() << " connected=" << r.connected
        << " two_connected=" << r.two_connected << " three_connected=" << r.three_connected
        << " girth=" << (r.girth == 0 ? std::string("inf") : std::to_string(r.girth)) << " cubic=" << r.cubic
        << " bipartite=" << r.bipartite << " triangle_free=" << r.triangle_free << " square_free=" << r.square_free
        << " every_vertex_on_triangle=" << r.every_vertex_on_triangle << " min_degree=" << r.min_degree
        << " max_degree=" << r.max_degree << " chromatic_number=" << oracle::chromatic_number(g)
        << " domination_number=" << oracle::min_dominating_set_size(g)
        << " three_edge_colorable=" << oracle::is_3_edge_colorable(g);
    if (g.order() <= 16) out << " treewidth=" << oracle::treewidth(g);
    if (g.order() <= 24) out << " colorable_010=" << oracle::is_010_colorable(g);
    if (g.edge_count() <= 24) out << " folkman=" << oracle::folkman_check(g);
    if (!cfg.problem.empty()) {
      ProblemSpec spec = make_spec(cfg, std::max(g.order(), 1));
      bool satisfies = false;
      try {
        satisfies = family_predicate(spec, g);
      } catch (const std::invalid_argument& e) {
        err << "graph " << index << ": " << e.what() << '\n';
        status = 1;
      }
      out << " satisfies=" << satisfies;
    }
    out << '\n';
  }
  return status;
}

}  // namespace

int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search and enumerate graphs under quantified constraints", "qsms"};
  app.require_subcommand(1);
  Config cfg;

  auto* encode = app.add_subcommand("encode", "write the QCIR encoding of a problem");
  add_problem_options(*encode, cfg, true);
  encode->add_flag("--qstatic", cfg.qstatic, "add the static minimality constraint");
  encode->add_option("--order", cfg.order, "cell order for --qstatic: lex or colex")
      ->check(CLI::IsMember({"lex", "colex"}));
  encode->add_option("-o,--output", cfg.output, "output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "decide a problem or a QCIR file");
  auto* enumerate = app.add_subcommand("enumerate", "list all solutions up to isomorphism");
  for (auto* cmd : {solve, enumerate}) {
    add_problem_options(*cmd, cfg, false);
    cmd->add_option("input", cfg.input, "QCIR file ('-' for stdin)");
    cmd->add_flag("--qstatic", cfg.qstatic, "add the static minimality constraint");
    cmd->add_option("--sms", cfg.sms, "dynamic symmetry breaking: on or off");
    cmd->add_option("--order", cfg.order, "cell order: lex or colex")->check(CLI::IsMember({"lex", "colex"}));
    cmd->add_option("--format", cfg.format, "graph output: graph6 or edgelist");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_flag("!--no-stats", cfg.stats, "suppress statistics on stderr");
  }
  enumerate->add_option("--limit", cfg.limit, "stop after this many solutions (0 = all)");

  auto* check = app.add_subcommand("check", "report oracle properties of graphs");
  add_problem_options(*check, cfg, false);
  check->add_option("input", cfg.input, "graph file, graph6 or edge lists ('-' for stdin)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("QSMS_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: QSMS_SEED is not a number\n";
      return 2;
    }
  }

  try {
    if (encode->parsed()) return cmd_encode(cfg, in, out);
    if (solve->parsed()) return cmd_solve(cfg, in, out, err);
    if (enumerate->parsed()) return cmd_enumerate(cfg, in, out, err);
    return cmd_check(cfg, in, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qsms::cli
