#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qsms/graph.hpp"
#include "qsms/oracle.hpp"
#include "qsms/qcir.hpp"
#include "support.hpp"

using namespace qsms;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(std::move(args), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const char* kExample = "#QCIR-G14\nexists(x, y)\nforall(z)\noutput(g2)\ng1 = and(x, -y)\ng2 = or(g1, z)\n";

}  // namespace

TEST_CASE("encode matches the frozen fixture") {
  const auto r = run({"encode", "--problem", "triangle-free", "--n", "5", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(std::string(QSMS_GOLDEN_DIR) + "/triangle_free_n5_k3.qcir"));
}

TEST_CASE("encode usage errors") {
  CHECK(run({"encode", "--problem", "bogus", "--n", "3"}).code == 2);
  CHECK(run({"encode", "--problem", "triangle-free", "--n", "5", "--k", "1"}).code == 2);
  CHECK(run({"encode", "--n", "3"}).code == 2);
  CHECK(run({"encode", "--problem", "none", "--n", "0"}).code == 2);
  CHECK(run({"encode", "--problem", "none", "--n", "3", "--order", "diagonal"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("encode with static minimality") {
  const auto r = run({"encode", "--problem", "none", "--n", "4", "--qstatic"});
  REQUIRE(r.code == 0);
  const Qbf q = parse_qcir(r.out);
  CHECK(q.free.size() == 6);
  CHECK(q.forall.size() == 16);
  const auto e = run({"enumerate", "-", "--sms", "off", "--no-stats"}, r.out);
  CHECK(e.code == 0);
  CHECK(lines_of(e.out).back() == "count=11 complete=true");
}

TEST_CASE("solve verdicts and exit codes") {
  const auto t = run({"solve", "-", "--no-stats"}, kExample);
  CHECK(t.code == 10);
  CHECK(lines_of(t.out).front() == "TRUE");

  const auto f = run({"solve", "--problem", "domination", "--n", "6", "--variant", "bipartite", "--no-stats"});
  CHECK(f.code == 20);
  CHECK(f.out == "FALSE\n");

  const auto c5 = run({"solve", "--problem", "triangle-free", "--n", "5", "--k", "3", "--no-stats"});
  CHECK(c5.code == 10);
  const auto out = lines_of(c5.out);
  REQUIRE(out.size() >= 2);
  std::string body;
  for (std::size_t i = 1; i < out.size(); ++i) body += out[i] + "\n";
  CHECK(oracle::isomorphic(parse_edge_list(body), testing::cycle(5)));

  CHECK(run({"solve", "-"}, "#QCIR-G14\nexists(x)\noutput(y)\n").code == 2);
  CHECK(run({"solve", "-"}, "#QCIR-G14\nexists(x)\nforall(y)\nexists(z)\noutput(x)\n").code == 2);
  CHECK(run({"solve", "/nonexistent/file.qcir"}).code == 2);
  CHECK(run({"solve"}).code == 2);
}

TEST_CASE("statistics go to stderr") {
  const auto r = run({"solve", "--problem", "triangle-free", "--n", "5", "--k", "3"});
  CHECK(r.out.find("refinements") == std::string::npos);
  CHECK(r.err.find("refinements=") != std::string::npos);
  CHECK(run({"solve", "--problem", "triangle-free", "--n", "5", "--k", "3", "--no-stats"}).err.empty());
}

TEST_CASE("enumerate output") {
  const auto r = run({"enumerate", "--problem", "none", "--n", "4", "--sms", "on", "--no-stats"});
  CHECK(r.code == 0);
  const auto out = lines_of(r.out);
  REQUIRE(out.size() == 12);
  CHECK(out.back() == "count=11 complete=true");
  std::vector<Graph> graphs;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) graphs.push_back(parse_graph6(out[i]));
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) CHECK_FALSE(oracle::isomorphic(graphs[i], graphs[j]));
  }

  const auto limited = run({"enumerate", "--problem", "none", "--n", "4", "--limit", "3", "--no-stats"});
  CHECK(lines_of(limited.out).back() == "count=3 complete=false");

  const auto crit = run({"enumerate", "--problem", "treewidth", "--n", "5", "--k", "4", "--critical", "--no-stats"});
  const auto crit_lines = lines_of(crit.out);
  REQUIRE(crit_lines.size() == 2);
  CHECK(parse_graph6(crit_lines[0]) == testing::complete(5));
  CHECK(crit_lines[1] == "count=1 complete=true");

  const auto lists = run({"enumerate", "--problem", "none", "--n", "3", "--format", "edgelist", "--no-stats"});
  CHECK(lists.out.find("3 3\n1 2\n1 3\n2 3\n") != std::string::npos);
  CHECK(run({"enumerate", "--problem", "none", "--n", "3", "--format", "dot"}).code == 2);
}

TEST_CASE("check reports") {
  const auto pet = run({"check", "--problem", "snark", "-"}, emit_graph6(testing::petersen()) + "\n");
  CHECK(pet.code == 0);
  CHECK(pet.out.find("satisfies=true") != std::string::npos);
  CHECK(pet.out.find("girth=5") != std::string::npos);
  CHECK(pet.out.find("three_edge_colorable=false") != std::string::npos);

  const auto c5 = run({"check", "--problem", "triangle-free-non-3-col", "-"}, "5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n");
  CHECK(c5.code == 0);
  CHECK(c5.out.find("chromatic_number=3") != std::string::npos);
  CHECK(c5.out.find("satisfies=false") != std::string::npos);

  const auto empty = run({"check", "-"}, "");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  const auto bad = run({"check", "-"}, "D??\nzz\n");
  CHECK(bad.code == 1);
  CHECK(lines_of(bad.out).size() == 1);
  CHECK(bad.err.find("line 2") != std::string::npos);

  const auto bad_list = run({"check", "-"}, "3 1\n1 2\n\n3 1\n3 2\n");
  CHECK(bad_list.code == 1);
  CHECK(bad_list.err.find("line 5") != std::string::npos);
}

TEST_CASE("enumerate output passes check for the same family") {
  const std::vector<std::vector<std::string>> problems{
      {"--problem", "triangle-free", "--n", "6"},
      {"--problem", "triangle-free", "--n", "7", "--k", "3", "--maximal"},
      {"--problem", "treewidth", "--n", "6", "--k", "3"},
      {"--problem", "folkman", "--n", "6", "--k", "4"},
  };
  for (const auto& p : problems) {
    std::vector<std::string> e{"enumerate", "--no-stats"};
    e.insert(e.end(), p.begin(), p.end());
    const auto r = run(e);
    REQUIRE(r.code == 0);
    auto out = lines_of(r.out);
    CHECK(out.back().find("complete=true") != std::string::npos);
    out.pop_back();
    std::vector<std::string> c{"check", "-"};
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != "--n") {
        c.push_back(p[i]);
      } else {
        ++i;
      }
    }
    const auto checked = run(c, r.out);
    CHECK(checked.code == 0);
    const auto reports = lines_of(checked.out);
    CHECK(checked.err.empty());
    CHECK(reports.size() == out.size());
    for (const auto& l : reports) CHECK(l.find("satisfies=true") != std::string::npos);
  }
}

TEST_CASE("edge-list enumeration output pipes into check") {
  const auto r = run({"enumerate", "--problem", "triangle-free", "--n", "6", "--format", "edgelist", "--no-stats"});
  const auto checked = run({"check", "--problem", "triangle-free", "-"}, r.out);
  CHECK(checked.code == 0);
  const auto reports = lines_of(checked.out);
  CHECK(reports.size() == 38);
  for (const auto& l : reports) CHECK(l.find("satisfies=true") != std::string::npos);
}

TEST_CASE("runs are deterministic") {
  const std::vector<std::string> args{"enumerate", "--problem", "triangle-free", "--n", "7", "--no-stats", "--seed", "7"};
  CHECK(run(args).out == run(args).out);
  const auto a = run({"enumerate", "--problem", "none", "--n", "5", "--order", "colex", "--no-stats"});
  const auto b = run({"enumerate", "--problem", "none", "--n", "5", "--order", "colex", "--no-stats"});
  CHECK(a.out == b.out);
  CHECK(lines_of(a.out).back() == "count=34 complete=true");

  setenv("QSMS_SEED", "123", 1);
  CHECK(run(args).out == run(args).out);
  setenv("QSMS_SEED", "not-a-number", 1);
  CHECK(run(args).code == 2);
  unsetenv("QSMS_SEED");
}
