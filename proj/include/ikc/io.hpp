// Input parsing (graph text format and kminus spec format) and JSON/text
// emission of verdicts.

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ikc/bipartite.hpp"
#include "ikc/engine.hpp"
#include "ikc/graph.hpp"

namespace ikc {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using Input = std::variant<Graph, BipartiteSpec>;

namespace detail {

// Cursor over the input text with 1-based line/column tracking.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_blanks() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) advance();
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col_, what); }

  std::string word() {
    skip_blanks();
    std::string w;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      w.push_back(peek());
      advance();
    }
    return w;
  }

  int integer(const char* what) {
    skip_blanks();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    std::int64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) fail(std::string(what) + " too large");
      advance();
    }
    return static_cast<int>(v);
  }

  void expect(char c) {
    skip_blanks();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void end_line() {
    skip_blanks();
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing text");
    advance();
  }

  int line() const { return line_; }
  int column() const { return col_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline Graph parse_graph_body(Scanner& sc) {
  const int order = sc.integer("order");
  if (order > kMaxOrder) sc.fail("order exceeds " + std::to_string(kMaxOrder));
  const int count = sc.integer("edge count");
  sc.end_line();
  std::vector<Edge> edges;
  for (int k = 0; k < count; ++k) {
    sc.skip_space();
    if (sc.at_end()) sc.fail("expected " + std::to_string(count) + " edges, found " + std::to_string(k));
    const int line = sc.line(), col = sc.column();
    const int u = sc.integer("vertex");
    const int v = sc.integer("vertex");
    sc.end_line();
    if (u >= order || v >= order) throw ParseError(line, col, "vertex out of range");
    if (u == v) throw ParseError(line, col, "self-loop");
    edges.emplace_back(u, v);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e)
      if (normalized(edges[e]) == normalized(edges.back())) throw ParseError(line, col, "duplicate edge");
  }
  sc.skip_space();
  if (!sc.at_end()) sc.fail("unexpected text after edge list");
  return make_graph(order, edges);
}

inline BipartiteSpec parse_spec_body(Scanner& sc) {
  const int p = sc.integer("p");
  const int q = sc.integer("q");
  if (p + q > kMaxOrder) sc.fail("p + q exceeds " + std::to_string(kMaxOrder));
  sc.expect(':');
  std::vector<RemovedPair> removed;
  sc.skip_blanks();
  bool first = true;
  while (!sc.at_end() && sc.peek() != '\n') {
    if (!first) sc.expect(';');
    first = false;
    sc.skip_blanks();
    const int line = sc.line(), col = sc.column();
    const int i = sc.integer("a-index");
    sc.expect(',');
    const int j = sc.integer("b-index");
    if (i < 1 || i > p || j < 1 || j > q)
      throw ParseError(line, col, "pair " + std::to_string(i) + "," + std::to_string(j) + " out of range for K" +
                                      std::to_string(p) + "," + std::to_string(q));
    for (const auto& r : removed)
      if (r == RemovedPair{i, j}) throw ParseError(line, col, "duplicate pair");
    removed.emplace_back(i, j);
    sc.skip_blanks();
  }
  sc.skip_space();
  if (!sc.at_end()) sc.fail("unexpected text after spec");
  return make_spec(p, q, std::move(removed));
}

}  // namespace detail

/// Either `g <order> <edgecount>` plus edge lines, or `kminus p q : i,j ; ...`.
inline Input parse_input(std::string_view text) {
  detail::Scanner sc(text);
  sc.skip_space();
  const int line = sc.line(), col = sc.column();
  const std::string head = sc.word();
  if (head == "g") return detail::parse_graph_body(sc);
  if (head == "kminus") return detail::parse_spec_body(sc);
  throw ParseError(line, col, head.empty() ? "expected 'g' or 'kminus'" : "unknown header '" + head + "'");
}

inline Input parse_input_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_input(ss.str());
}

inline Graph as_graph(const Input& in) {
  return std::holds_alternative<Graph>(in) ? std::get<Graph>(in) : realize(std::get<BipartiteSpec>(in));
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const MinorModel& m) {
  json edges = json::array();
  for (const auto& [he, ge] : m.edge_assignment) edges.push_back({{he.first, he.second}, {ge.first, ge.second}});
  return {{"branchSets", m.branch_sets}, {"edgeAssignment", edges}};
}

inline MinorModel minor_model_from_json(const json& j) {
  MinorModel m;
  m.branch_sets = j.at("branchSets").get<std::vector<std::vector<Vertex>>>();
  for (const auto& e : j.at("edgeAssignment"))
    m.edge_assignment.push_back({{e.at(0).at(0).get<Vertex>(), e.at(0).at(1).get<Vertex>()},
                                 {e.at(1).at(0).get<Vertex>(), e.at(1).at(1).get<Vertex>()}});
  return m;
}

inline json to_json(const PlanarJoinCertificate& c) {
  return {{"u", c.u}, {"v", c.v}, {"rotation", c.embedding.rotation}};
}

inline PlanarJoinCertificate planar_join_from_json(const json& j) {
  return {j.at("u").get<Vertex>(), j.at("v").get<Vertex>(), {j.at("rotation").get<std::vector<std::vector<Vertex>>>()}};
}

inline json to_json(const ChainStep& s) {
  if (s.kind == ChainStep::Kind::Rule) return {{"op", "rule"}, {"rule", s.rule_id}, {"p", s.p}, {"q", s.q}, {"m", s.m}};
  return {{"op", "lift"},        {"side", std::string(1, s.side)}, {"k", s.k}, {"from", {s.from_p, s.from_q, s.from_m}},
          {"to", {s.p, s.q, s.m}}};
}

inline ChainStep chain_step_from_json(const json& j) {
  ChainStep s;
  if (j.at("op") == "rule") {
    s.kind = ChainStep::Kind::Rule;
    s.rule_id = j.at("rule").get<std::string>();
    s.p = j.at("p");
    s.q = j.at("q");
    s.m = j.at("m");
    return s;
  }
  if (j.at("op") != "lift") throw std::invalid_argument("unknown chain op");
  s.kind = ChainStep::Kind::Lift;
  const auto side = j.at("side").get<std::string>();
  s.side = side.empty() ? '?' : side[0];
  s.k = j.at("k");
  s.from_p = j.at("from").at(0);
  s.from_q = j.at("from").at(1);
  s.from_m = j.at("from").at(2);
  s.p = j.at("to").at(0);
  s.q = j.at("to").at(1);
  s.m = j.at("to").at(2);
  return s;
}

/// Schema: {status, certificate: {kind, steps[], witness?, ...}, ruleCitations[]}.
inline json to_json(const Verdict& v) {
  const Certificate& c = v.certificate;
  json steps = json::array();
  for (const auto& s : c.chain) steps.push_back(to_json(s));
  if (!c.direct_rule.empty()) steps.push_back({{"op", "rule"}, {"rule", c.direct_rule}});
  for (const auto& d : c.descent)
    steps.push_back({{"op", "delete"}, {"move", d.move}, {"vertices", d.removed}, {"result", {d.p, d.q, d.m}}});
  json cert = {{"kind", to_string(c.kind)}, {"steps", steps}};
  if (!c.part_a.empty() || !c.part_b.empty()) cert["parts"] = {c.part_a, c.part_b};
  if (!c.known_class.empty()) cert["class"] = c.known_class;
  if (c.isomorphism) cert["isomorphism"] = *c.isomorphism;
  if (c.planar) cert["planarJoin"] = to_json(*c.planar);
  if (c.witness)
    cert["witness"] = {{"family", c.witness->family},
                       {"member", c.witness->member},
                       {"memberKey", c.witness->member_key},
                       {"model", to_json(c.witness->model)}};
  json out = {{"status", to_string(v.status)}, {"certificate", cert}, {"ruleCitations", v.citations}};
  if (v.undecided) out["undecided"] = true;
  return out;
}

inline Status status_from_string(const std::string& s) {
  if (s == "IK") return Status::IK;
  if (s == "NOT_IK") return Status::NotIK;
  if (s == "UNKNOWN") return Status::Unknown;
  throw std::invalid_argument("unknown status " + s);
}

inline CertificateKind kind_from_string(const std::string& s) {
  for (auto k : {CertificateKind::None, CertificateKind::MinorWitness, CertificateKind::RuleChain, CertificateKind::PlanarJoin,
                 CertificateKind::SmallPart, CertificateKind::KnownClass})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown certificate kind " + s);
}

inline Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.status = status_from_string(j.at("status").get<std::string>());
  v.citations = j.at("ruleCitations").get<std::vector<std::string>>();
  v.undecided = j.value("undecided", false);
  const json& cert = j.at("certificate");
  Certificate& c = v.certificate;
  c.kind = kind_from_string(cert.at("kind").get<std::string>());
  for (const auto& s : cert.at("steps")) {
    if (s.at("op") == "delete") {
      const auto r = s.at("result");
      c.descent.push_back({s.at("vertices").get<std::vector<Vertex>>(), r.at(0), r.at(1), r.at(2), s.at("move")});
    } else if (s.at("op") == "rule" && !s.contains("p")) {
      c.direct_rule = s.at("rule").get<std::string>();
    } else {
      c.chain.push_back(chain_step_from_json(s));
    }
  }
  if (cert.contains("parts")) {
    c.part_a = cert["parts"].at(0).get<std::vector<Vertex>>();
    c.part_b = cert["parts"].at(1).get<std::vector<Vertex>>();
  }
  if (cert.contains("class")) c.known_class = cert["class"].get<std::string>();
  if (cert.contains("isomorphism")) c.isomorphism = cert["isomorphism"].get<std::vector<Vertex>>();
  if (cert.contains("planarJoin")) c.planar = planar_join_from_json(cert["planarJoin"]);
  if (cert.contains("witness")) {
    const json& w = cert["witness"];
    c.witness = WitnessRef{w.at("family"), w.at("member"), w.at("memberKey"), minor_model_from_json(w.at("model"))};
  }
  return v;
}

/// FNV-1a over the compact JSON of the certificate, as 16 hex digits.
inline std::string certificate_digest(const Verdict& v) {
  const std::string s = to_json(v).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::string to_text(const Verdict& v) {
  std::ostringstream os;
  const Certificate& c = v.certificate;
  os << "status: " << to_string(v.status) << '\n' << "certificate: " << to_string(c.kind) << '\n';
  for (const auto& s : c.chain) {
    if (s.kind == ChainStep::Kind::Rule)
      os << "  rule " << s.rule_id << ": every K" << s.p << ',' << s.q << " minus " << s.m << " is IK\n";
    else
      os << "  lift side " << s.side << " by k=" << s.k << ": K" << s.from_p << ',' << s.from_q << " minus " << s.from_m
         << " -> K" << s.p << ',' << s.q << " minus " << s.m << '\n';
  }
  if (!c.direct_rule.empty()) os << "  rule " << c.direct_rule << '\n';
  if (!c.known_class.empty()) os << "  class " << c.known_class << '\n';
  for (const auto& d : c.descent) {
    os << "  delete";
    for (Vertex x : d.removed) os << ' ' << x;
    os << " -> K" << d.p << ',' << d.q << " minus " << d.m << '\n';
  }
  if (c.planar) os << "  planar after removing " << c.planar->u << ' ' << c.planar->v << '\n';
  if (c.witness) {
    os << "  minor of " << c.witness->family << " member " << c.witness->member << ", branch sets:";
    for (const auto& bs : c.witness->model.branch_sets) {
      os << " {";
      for (std::size_t k = 0; k < bs.size(); ++k) os << (k ? "," : "") << bs[k];
      os << '}';
    }
    os << '\n';
  }
  if (!c.part_a.empty() || !c.part_b.empty())
    os << "  parts " << c.part_a.size() << '+' << c.part_b.size() << '\n';
  os << "citations:";
  for (const auto& r : v.citations) os << ' ' << r;
  os << '\n';
  if (v.undecided) os << "note: a minor search hit its budget\n";
  return os.str();
}

}  // namespace ikc
