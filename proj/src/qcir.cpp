#include "qsms/qcir.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qsms/graph.hpp"

namespace qsms {

namespace {

using Ref = Circuit::Ref;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

// "name(a, b, c)" -> {name, [a, b, c]}; nullopt if not of that shape.
std::optional<std::pair<std::string_view, std::vector<std::string_view>>> split_call(std::string_view s) {
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') return std::nullopt;
  const auto head = trim(s.substr(0, open));
  const auto body = trim(s.substr(open + 1, s.size() - open - 2));
  std::vector<std::string_view> args;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      args.push_back(trim(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return std::make_pair(head, std::move(args));
}

struct Literal {
  std::string_view name;
  bool negated = false;
};

Literal parse_literal(std::string_view s, std::size_t line) {
  Literal lit;
  if (!s.empty() && s.front() == '-') {
    lit.negated = true;
    s.remove_prefix(1);
  }
  if (!is_identifier(s)) throw ParseError(line, "malformed literal '" + std::string(s) + "'");
  lit.name = s;
  return lit;
}

}  // namespace

Qbf parse_qcir(std::string_view text) {
  Qbf q;
  std::set<std::string, std::less<>> declared;
  std::unordered_map<std::string, Ref> gates;
  std::optional<std::pair<Literal, std::size_t>> output;
  std::string output_name;
  // 0 = nothing yet, 1 = free, 2 = exists, 3 = forall, 4 = output seen
  int stage = 0;
  int quantifier_blocks = 0;
  bool header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);

    if (!header) {
      if (line != "#QCIR-G14") throw ParseError(line_no, "expected header #QCIR-G14");
      header = true;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;

    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      if (stage != 4) throw ParseError(line_no, "gate definition before output line");
      const auto name = trim(line.substr(0, eq));
      if (!is_identifier(name)) throw ParseError(line_no, "malformed gate name");
      const auto call = split_call(trim(line.substr(eq + 1)));
      if (!call) throw ParseError(line_no, "malformed gate definition");
      const auto [kind, args] = *call;
      if (kind != "and" && kind != "or") {
        throw ParseError(line_no, "unsupported gate type '" + std::string(kind) + "'");
      }
      if (declared.contains(name) || gates.contains(std::string(name))) {
        throw ParseError(line_no, "redefinition of '" + std::string(name) + "'");
      }
      std::vector<Ref> children;
      for (auto arg : args) {
        const auto lit = parse_literal(arg, line_no);
        Ref r;
        if (lit.name == name) {
          throw ParseError(line_no, "cyclic definition of '" + std::string(name) + "'");
        } else if (auto it = gates.find(std::string(lit.name)); it != gates.end()) {
          r = it->second;
        } else if (declared.contains(lit.name)) {
          r = q.matrix.var(lit.name);
        } else {
          throw ParseError(line_no, "undeclared identifier '" + std::string(lit.name) + "'");
        }
        children.push_back(lit.negated ? ~r : r);
      }
      const Ref g = kind == "and" ? q.matrix.make_and(std::move(children)) : q.matrix.make_or(std::move(children));
      gates.emplace(std::string(name), g);
      continue;
    }

    const auto call = split_call(line);
    if (!call) throw ParseError(line_no, "unrecognised line");
    const auto [kind, args] = *call;
    if (kind == "output") {
      if (stage == 4) throw ParseError(line_no, "second output line");
      if (args.size() != 1) throw ParseError(line_no, "output takes exactly one literal");
      output = std::make_pair(parse_literal(args[0], line_no), line_no);
      output_name = std::string(output->first.name);
      output->first.name = output_name;
      stage = 4;
      continue;
    }
    int block = 0;
    if (kind == "free") block = 1;
    else if (kind == "exists") block = 2;
    else if (kind == "forall") block = 3;
    else throw ParseError(line_no, "unknown statement '" + std::string(kind) + "'");
    if (block < stage) throw ParseError(line_no, "prefix must be free, exists, forall in that order");
    if (block != stage && block != 1) {
      if (++quantifier_blocks > 2) throw ParseError(line_no, "more than two quantifier blocks");
    }
    stage = block;
    auto& target = block == 1 ? q.free : block == 2 ? q.exists : q.forall;
    for (auto arg : args) {
      if (!is_identifier(arg)) throw ParseError(line_no, "malformed variable name");
      if (!declared.insert(std::string(arg)).second) {
        throw ParseError(line_no, "variable '" + std::string(arg) + "' declared twice");
      }
      target.emplace_back(arg);
      q.matrix.var(arg);
    }
  }

  if (!header) throw ParseError(1, "empty input");
  if (!output) throw ParseError(line_no, "missing output line");
  const auto& [lit, out_line] = *output;
  Ref out;
  if (auto it = gates.find(output_name); it != gates.end()) {
    out = it->second;
  } else if (declared.contains(output_name)) {
    out = q.matrix.var(output_name);
  } else {
    throw ParseError(out_line, "output references undefined '" + output_name + "'");
  }
  q.matrix.set_output(lit.negated ? ~out : out);
  return q;
}

std::string emit_qcir(const Qbf& q) {
  const Circuit& c = q.matrix;
  std::set<std::string, std::less<>> var_names(q.free.begin(), q.free.end());
  var_names.insert(q.exists.begin(), q.exists.end());
  var_names.insert(q.forall.begin(), q.forall.end());
  for (const auto& name : c.support()) var_names.insert(name);

  // Gate prefix that cannot collide with a variable name.
  std::string prefix = "g";
  auto collides = [&](const std::string& p) {
    return std::any_of(var_names.begin(), var_names.end(), [&](const std::string& v) {
      return v.size() > p.size() && v.starts_with(p) &&
             std::all_of(v.begin() + static_cast<std::ptrdiff_t>(p.size()), v.end(),
                         [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    });
  };
  while (collides(prefix)) prefix += '_';

  const auto live = c.reachable();
  std::vector<std::string> names(c.size());
  std::ostringstream gates;
  std::size_t counter = 0;
  auto fresh = [&] { return prefix + std::to_string(++counter); };

  bool need_constant = Circuit::is_constant(c.output());
  for (std::uint32_t k = 1; k < c.size() && !need_constant; ++k) {
    if (!live[k]) continue;
    for (auto ch : c.node(k).children) need_constant = need_constant || ch.node == 0;
  }
  if (need_constant) {
    names[0] = fresh();
    gates << names[0] << " = and()\n";
  }
  auto lit = [&](Ref r) { return (r.negated ? "-" : "") + names[r.node]; };
  for (std::uint32_t k = 1; k < c.size(); ++k) {
    if (!live[k]) continue;
    const auto& nd = c.node(k);
    if (nd.kind == Circuit::Kind::Var) {
      names[k] = c.var_name(nd.var);
      continue;
    }
    names[k] = fresh();
    gates << names[k] << " = " << (nd.kind == Circuit::Kind::And ? "and(" : "or(");
    for (std::size_t m = 0; m < nd.children.size(); ++m) {
      if (m) gates << ", ";
      gates << lit(nd.children[m]);
    }
    gates << ")\n";
  }

  std::ostringstream out;
  out << "#QCIR-G14\n";
  auto block = [&](const char* kind, const std::vector<std::string>& vars) {
    if (vars.empty()) return;
    out << kind << '(';
    for (std::size_t m = 0; m < vars.size(); ++m) out << (m ? ", " : "") << vars[m];
    out << ")\n";
  };
  block("free", q.free);
  block("exists", q.exists);
  block("forall", q.forall);
  out << "output(" << lit(c.output()) << ")\n" << gates.str();
  return out.str();
}

}  // namespace qsms
