#pragma once

// Plain-text formats: elections (.cop), graphs, goals, witnesses and the
// instance manifest written by `reduce`.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "copeland/graph.hpp"
#include "copeland/instance.hpp"

namespace copeland::io {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    out.push_back(trim(s.substr(from, at == std::string_view::npos ? std::string_view::npos : at - from)));
    if (at == std::string_view::npos) return out;
    from = at + 1;
  }
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

/// Non-blank content lines with comments stripped, paired with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t no = 0, from = 0;
  while (from <= text.size()) {
    auto at = text.find('\n', from);
    if (at == std::string_view::npos) at = text.size();
    ++no;
    auto line = text.substr(from, at - from);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (auto t = trim(line); !t.empty()) out.emplace_back(no, std::move(t));
    from = at + 1;
  }
  return out;
}

[[noreturn]] inline void fail(Errc code, std::size_t line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline BigInt parse_count(std::string_view s, std::size_t line) {
  if (!all_digits(s)) fail(Errc::BadMultiplicity, line, "'" + std::string(s) + "' is not a positive integer");
  BigInt v(std::string{s});
  if (v < 1) fail(Errc::BadMultiplicity, line, "multiplicity must be positive");
  return v;
}

inline std::string join(const std::vector<std::string>& v, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

/// "head: rest" with the rest possibly empty.
inline std::pair<std::string, std::string> directive(const std::string& line, std::size_t no) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) fail(Errc::SyntaxError, no, "expected ':' in '" + line + "'");
  return {trim(std::string_view(line).substr(0, colon)), trim(std::string_view(line).substr(colon + 1))};
}

inline std::vector<CandidateIndex> parse_order(const std::string& body, const Election& shape,
                                               const std::map<std::string, CandidateIndex>& idx, std::size_t no) {
  std::vector<CandidateIndex> order;
  std::vector<bool> seen(shape.size(), false);
  if (!body.empty()) {
    for (const auto& tok : split(body, '>')) {
      auto it = idx.find(tok);
      if (tok.empty() || !valid_candidate_id(tok)) fail(Errc::SyntaxError, no, "bad candidate in order");
      if (it == idx.end()) fail(Errc::UnknownCandidate, no, "'" + tok + "'");
      if (seen[it->second]) fail(Errc::SyntaxError, no, "'" + tok + "' appears twice in order");
      seen[it->second] = true;
      order.push_back(it->second);
    }
  }
  if (order.size() != shape.size()) fail(Errc::SyntaxError, no, "order must rank every candidate");
  return order;
}

inline std::vector<std::uint8_t> parse_table(const std::string& body, std::size_t n,
                                             const std::map<std::string, CandidateIndex>& idx, std::size_t no) {
  std::vector<std::uint8_t> prefs(pair_count(n), 0);
  std::vector<bool> set(pair_count(n), false);
  std::size_t filled = 0;
  if (!body.empty()) {
    for (const auto& entry : split(body, ',')) {
      const auto sides = split(entry, '>');
      if (sides.size() != 2 || sides[0].empty() || sides[1].empty())
        fail(Errc::SyntaxError, no, "table entry '" + entry + "' is not of the form a>b");
      auto a = idx.find(sides[0]), b = idx.find(sides[1]);
      if (a == idx.end()) fail(Errc::UnknownCandidate, no, "'" + sides[0] + "'");
      if (b == idx.end()) fail(Errc::UnknownCandidate, no, "'" + sides[1] + "'");
      if (a->second == b->second) fail(Errc::SyntaxError, no, "'" + entry + "' compares a candidate with itself");
      const auto i = std::min(a->second, b->second), j = std::max(a->second, b->second);
      const auto q = pair_index(n, i, j);
      if (set[q]) fail(Errc::SyntaxError, no, "pair {" + sides[0] + "," + sides[1] + "} given twice");
      set[q] = true;
      ++filled;
      prefs[q] = a->second == i ? 1 : 0;
    }
  }
  if (filled != pair_count(n))
    fail(Errc::IncompleteTable, no, std::to_string(filled) + " of " + std::to_string(pair_count(n)) + " pairs given");
  return prefs;
}

}  // namespace detail

// ---- Elections -------------------------------------------------------------------

/// Ballot body as written after the colon.
inline std::string serialize_ballot_body(const Ballot& b, const std::vector<std::string>& names) {
  std::string s;
  const auto n = names.size();
  if (b.is_linear()) {
    for (std::size_t r = 0; r < b.order().size(); ++r) s += (r ? " > " : "") + names[b.order()[r]];
    return s;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!s.empty()) s += ", ";
      s += b.prefs()[pair_index(n, i, j)] ? names[i] + ">" + names[j] : names[j] + ">" + names[i];
    }
  return s;
}

inline std::string serialize_ballot(const Ballot& b, const std::vector<std::string>& names) {
  const auto body = serialize_ballot_body(b, names);
  return std::string(b.is_linear() ? "order " : "table ") + b.multiplicity().str() + ":" + (body.empty() ? "" : " ") +
         body;
}

inline std::string serialize_election(const Election& e) {
  std::string s = "candidates:";
  for (const auto& c : e.candidates()) s += " " + c;
  s += "\n";
  for (const auto& b : e.ballots()) s += serialize_ballot(b, e.candidates()) + "\n";
  return s;
}

/// Ballot lines over a known candidate list (voter pools reuse this).
inline std::vector<Ballot> parse_ballots(const std::vector<std::pair<std::size_t, std::string>>& lines,
                                         const Election& shape) {
  std::map<std::string, CandidateIndex> idx;
  for (std::size_t i = 0; i < shape.size(); ++i) idx[shape.candidates()[i]] = i;
  std::vector<Ballot> out;
  for (const auto& [no, line] : lines) {
    const auto [head, body] = detail::directive(line, no);
    const auto hw = detail::words(head);
    if (hw.size() != 2 || (hw[0] != "order" && hw[0] != "table"))
      detail::fail(Errc::SyntaxError, no, "expected 'order <mult>:' or 'table <mult>:'");
    auto mult = detail::parse_count(hw[1], no);
    if (hw[0] == "order") out.push_back(Ballot::linear(detail::parse_order(body, shape, idx, no), std::move(mult)));
    else out.push_back(Ballot::table(detail::parse_table(body, shape.size(), idx, no), std::move(mult)));
  }
  return out;
}

inline Election parse_election(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(Errc::SyntaxError, "line 1: missing 'candidates:' line");
  const auto& [no, first] = lines.front();
  const auto [head, body] = detail::directive(first, no);
  if (head != "candidates") detail::fail(Errc::SyntaxError, no, "first line must be 'candidates:'");
  const auto names = detail::words(body);
  std::map<std::string, int> seen;
  for (const auto& c : names) {
    if (!valid_candidate_id(c)) detail::fail(Errc::SyntaxError, no, "bad candidate id '" + c + "'");
    if (seen[c]++) detail::fail(Errc::DuplicateCandidate, no, "'" + c + "'");
  }
  const Election shape(names, {});
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (lines[i].second.rfind("candidates", 0) == 0)
      detail::fail(Errc::SyntaxError, lines[i].first, "second 'candidates:' line");
  return Election(names, parse_ballots({lines.begin() + 1, lines.end()}, shape));
}

/// A voter pool file: ballot lines only, over the given candidates. A leading
/// `candidates:` line is accepted when it repeats the election's list.
inline std::vector<Ballot> parse_voter_pool(std::string_view text, const Election& e) {
  auto lines = detail::content_lines(text);
  if (!lines.empty() && lines.front().second.rfind("candidates", 0) == 0) {
    const auto pool = parse_election(text);
    if (pool.candidates() != e.candidates())
      detail::fail(Errc::SyntaxError, lines.front().first, "voter pool candidates differ from the election");
    return pool.ballots();
  }
  return parse_ballots(lines, e);
}

// ---- Graphs ----------------------------------------------------------------------

inline Graph parse_graph(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(Errc::SyntaxError, "line 1: missing 'graph:' line");
  auto vertex = [](const std::string& s, std::size_t no) -> std::size_t {
    if (!detail::all_digits(s) || s.size() > 9) detail::fail(Errc::SyntaxError, no, "'" + s + "' is not a vertex number");
    return std::stoul(s);
  };
  const auto [head, body] = detail::directive(lines.front().second, lines.front().first);
  const auto nw = detail::words(body);
  if (head != "graph" || nw.size() != 1) detail::fail(Errc::SyntaxError, lines.front().first, "expected 'graph: <n>'");
  Graph g(vertex(nw[0], lines.front().first));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    const auto [h, b] = detail::directive(line, no);
    const auto uv = detail::words(b);
    if (h != "edge" || uv.size() != 2) detail::fail(Errc::SyntaxError, no, "expected 'edge: <u> <v>'");
    try {
      g.add_edge(vertex(uv[0], no), vertex(uv[1], no));
    } catch (const Error& ex) {
      if (ex.code() == Errc::SyntaxError) throw;
      detail::fail(ex.code(), no, "edge " + uv[0] + " " + uv[1]);
    }
  }
  return g;
}

inline std::string serialize_graph(const Graph& g) {
  std::string s = "graph: " + std::to_string(g.vertex_count()) + "\n";
  for (auto [u, v] : g.edges()) s += "edge: " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

// ---- Goals -----------------------------------------------------------------------

/// winner:p  unique:p  notwinner:p  notunique:p  order:a<b,b<=c,a=b
/// scores:a=4,b=2 (scaled)  dominate:a,b>c,d
inline GoalSpec parse_goal(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(Errc::InvalidGoal, "'" + std::string(text) + "' has no kind");
  const auto kind = detail::trim(text.substr(0, colon));
  const auto body = detail::trim(text.substr(colon + 1));
  auto id = [&](const std::string& s) {
    if (!valid_candidate_id(s)) throw Error(Errc::InvalidGoal, "bad candidate '" + s + "'");
    return s;
  };
  auto ids = [&](const std::string& s) {
    std::vector<std::string> v;
    for (const auto& x : detail::split(s, ',')) v.push_back(id(x));
    return v;
  };
  if (kind == "winner") return MakeWinner{id(body)};
  if (kind == "unique") return MakeUniqueWinner{id(body)};
  if (kind == "notwinner") return PrecludeWinner{id(body)};
  if (kind == "notunique") return PrecludeUniqueWinner{id(body)};
  if (kind == "order") {
    ScoreOrder o;
    for (const auto& c : detail::split(body, ',')) {
      std::size_t at;
      Relation rel;
      std::size_t len = 1;
      if ((at = c.find("<=")) != std::string::npos) rel = Relation::LessEqual, len = 2;
      else if ((at = c.find('<')) != std::string::npos) rel = Relation::Less;
      else if ((at = c.find('=')) != std::string::npos) rel = Relation::Equal;
      else throw Error(Errc::InvalidGoal, "comparison '" + c + "' lacks <, <= or =");
      o.relations.push_back({id(detail::trim(c.substr(0, at))), rel, id(detail::trim(c.substr(at + len)))});
    }
    return o;
  }
  if (kind == "scores") {
    ExactScaledScores s;
    for (const auto& c : detail::split(body, ',')) {
      const auto eq = c.find('=');
      const auto v = eq == std::string::npos ? std::string{} : detail::trim(c.substr(eq + 1));
      if (!detail::all_digits(v) || v.size() > 18) throw Error(Errc::InvalidGoal, "score entry '" + c + "'");
      s.scores.emplace_back(id(detail::trim(c.substr(0, eq))), std::stoll(v));
    }
    return s;
  }
  if (kind == "dominate") {
    const auto sides = detail::split(body, '>');
    if (sides.size() != 2) throw Error(Errc::InvalidGoal, "expected dominate:a,b>c,d");
    return GroupDominance{ids(sides[0]), ids(sides[1])};
  }
  throw Error(Errc::InvalidGoal, "unknown goal kind '" + kind + "'");
}

inline std::string serialize_goal(const GoalSpec& g) {
  struct V {
    std::string operator()(const MakeWinner& x) const { return "winner:" + x.p; }
    std::string operator()(const MakeUniqueWinner& x) const { return "unique:" + x.p; }
    std::string operator()(const PrecludeWinner& x) const { return "notwinner:" + x.p; }
    std::string operator()(const PrecludeUniqueWinner& x) const { return "notunique:" + x.p; }
    std::string operator()(const ScoreOrder& x) const {
      std::vector<std::string> parts;
      for (const auto& r : x.relations)
        parts.push_back(r.a + (r.rel == Relation::Less ? "<" : r.rel == Relation::LessEqual ? "<=" : "=") + r.b);
      return "order:" + detail::join(parts, ",");
    }
    std::string operator()(const ExactScaledScores& x) const {
      std::vector<std::string> parts;
      for (const auto& [c, v] : x.scores) parts.push_back(c + "=" + std::to_string(v));
      return "scores:" + detail::join(parts, ",");
    }
    std::string operator()(const GroupDominance& x) const {
      return "dominate:" + detail::join(x.a, ",") + ">" + detail::join(x.b, ",");
    }
    std::string operator()(const TablePredicate&) const {
      throw Error(Errc::InvalidGoal, "table predicates have no text form");
    }
  };
  return std::visit(V{}, g);
}

// ---- Witnesses -------------------------------------------------------------------

/// One line per fact; ballot lines are numbered from 1 in file order.
inline std::string serialize_witness(const Witness& w, const std::vector<std::string>& names) {
  auto units = [](const std::vector<BigInt>& u) {
    std::string s;
    for (const auto& x : u) s += " " + x.str();
    return s;
  };
  auto list = [](std::string head, const std::vector<std::string>& v) {
    return head + ":" + (v.empty() ? "" : " " + detail::join(v)) + "\n";
  };
  if (auto* x = std::get_if<AddedCandidates>(&w)) return list("add", x->names);
  if (auto* x = std::get_if<DeletedCandidates>(&w)) return list("delete", x->names);
  if (auto* x = std::get_if<PartitionOfCandidates>(&w)) return list("first", x->first) + list("second", x->second);
  if (auto* x = std::get_if<AddedVoters>(&w)) return "add-voters:" + units(x->units) + "\n";
  if (auto* x = std::get_if<DeletedVoters>(&w)) return "delete-voters:" + units(x->units) + "\n";
  if (auto* x = std::get_if<PartitionOfVoters>(&w)) return "first-units:" + units(x->first_units) + "\n";
  std::string s;
  if (auto* x = std::get_if<BribedBallots>(&w)) {
    for (const auto& [line, b] : x->changes)
      s += "bribe " + std::to_string(line + 1) + ": " + serialize_ballot(b.with_multiplicity(1), names) + "\n";
    return s.empty() ? "bribe:\n" : s;
  }
  for (const auto& f : std::get<Flips>(w).flips)
    s += "flip " + std::to_string(f.line + 1) + " " + f.units.str() + ": " + names[f.a] + ">" + names[f.b] + "\n";
  return s.empty() ? "flip:\n" : s;
}

inline Witness parse_witness(std::string_view text, const std::vector<std::string>& names) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw Error(Errc::SyntaxError, "line 1: empty witness");
  std::map<std::string, CandidateIndex> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = i;
  const Election shape(names, {});
  auto units = [](const std::string& body, std::size_t no) {
    std::vector<BigInt> u;
    for (const auto& w : detail::words(body)) {
      if (!detail::all_digits(w)) detail::fail(Errc::SyntaxError, no, "'" + w + "' is not a count");
      u.emplace_back(w);
    }
    return u;
  };
  auto line_number = [](const std::string& s, std::size_t no) -> std::size_t {
    if (!detail::all_digits(s) || s.size() > 9 || s == "0") detail::fail(Errc::SyntaxError, no, "bad line '" + s + "'");
    return std::stoul(s) - 1;
  };
  const auto [head0, body0] = detail::directive(lines.front().second, lines.front().first);
  const auto h0 = detail::words(head0);
  const auto kind = h0.empty() ? std::string{} : h0[0];
  if (kind == "add") return AddedCandidates{detail::words(body0)};
  if (kind == "delete") return DeletedCandidates{detail::words(body0)};
  if (kind == "add-voters") return AddedVoters{units(body0, lines.front().first)};
  if (kind == "delete-voters") return DeletedVoters{units(body0, lines.front().first)};
  if (kind == "first-units") return PartitionOfVoters{units(body0, lines.front().first)};
  if (kind == "first") {
    if (lines.size() != 2) detail::fail(Errc::SyntaxError, lines.front().first, "expected a 'second:' line");
    const auto [h1, b1] = detail::directive(lines[1].second, lines[1].first);
    if (h1 != "second") detail::fail(Errc::SyntaxError, lines[1].first, "expected 'second:'");
    return PartitionOfCandidates{detail::words(body0), detail::words(b1)};
  }
  if (kind == "bribe") {
    BribedBallots b;
    for (const auto& [no, line] : lines) {
      const auto colon = line.find(':');
      const auto h = detail::words(line.substr(0, colon));
      if (h.size() == 1 && lines.size() == 1) break;
      if (h.size() != 2 || h[0] != "bribe") detail::fail(Errc::SyntaxError, no, "expected 'bribe <line>: ...'");
      const auto ballot = parse_ballots({{no, detail::trim(std::string_view(line).substr(colon + 1))}}, shape);
      b.changes.emplace_back(line_number(h[1], no), ballot.front());
    }
    return b;
  }
  if (kind == "flip") {
    Flips f;
    for (const auto& [no, line] : lines) {
      const auto [h, body] = detail::directive(line, no);
      const auto hw = detail::words(h);
      if (hw.size() == 1 && lines.size() == 1) break;
      if (hw.size() != 3 || hw[0] != "flip") detail::fail(Errc::SyntaxError, no, "expected 'flip <line> <units>: a>b'");
      const auto sides = detail::split(body, '>');
      if (sides.size() != 2 || !idx.count(sides[0]) || !idx.count(sides[1]))
        detail::fail(Errc::SyntaxError, no, "bad pair '" + body + "'");
      f.flips.push_back({line_number(hw[1], no), idx[sides[0]], idx[sides[1]], detail::parse_count(hw[2], no)});
    }
    return f;
  }
  detail::fail(Errc::SyntaxError, lines.front().first, "unknown witness kind '" + kind + "'");
}

// ---- Instance manifest -------------------------------------------------------------

/// Key/value description of a control instance; file paths are relative to
/// the manifest's directory.
struct Manifest {
  std::string problem;
  Alpha alpha;
  WinnerModel model = WinnerModel::NonUnique;
  std::string p;
  std::optional<BigInt> k;
  std::string election = "election.cop";
  std::optional<std::string> spoilers;
  std::optional<std::string> voter_pool;
};

inline std::string model_name(WinnerModel m) { return m == WinnerModel::Unique ? "unique" : "nonunique"; }

inline WinnerModel parse_model(std::string_view s) {
  if (s == "nonunique") return WinnerModel::NonUnique;
  if (s == "unique") return WinnerModel::Unique;
  throw Error(Errc::SyntaxError, "model must be nonunique or unique, not '" + std::string(s) + "'");
}

inline std::string serialize_manifest(const Manifest& m) {
  std::string s = "problem: " + m.problem + "\nalpha: " + m.alpha.str() + "\nmodel: " + model_name(m.model) +
                  "\np: " + m.p + "\n";
  if (m.k) s += "k: " + m.k->str() + "\n";
  s += "election: " + m.election + "\n";
  if (m.spoilers) s += "spoilers: " + *m.spoilers + "\n";
  if (m.voter_pool) s += "voter-pool: " + *m.voter_pool + "\n";
  return s;
}

inline Manifest parse_manifest(std::string_view text) {
  Manifest m;
  bool have_problem = false, have_alpha = false, have_p = false;
  for (const auto& [no, line] : detail::content_lines(text)) {
    const auto [key, value] = detail::directive(line, no);
    if (key == "problem") m.problem = value, have_problem = true;
    else if (key == "alpha") m.alpha = Alpha::parse(value), have_alpha = true;
    else if (key == "model") m.model = parse_model(value);
    else if (key == "p") m.p = value, have_p = true;
    else if (key == "k") {
      if (!detail::all_digits(value)) detail::fail(Errc::SyntaxError, no, "k must be a non-negative integer");
      m.k = BigInt(value);
    } else if (key == "election") m.election = value;
    else if (key == "spoilers") m.spoilers = value;
    else if (key == "voter-pool") m.voter_pool = value;
    else detail::fail(Errc::SyntaxError, no, "unknown key '" + key + "'");
  }
  if (!have_problem || !have_alpha || !have_p)
    throw Error(Errc::SyntaxError, "manifest needs problem, alpha and p");
  return m;
}

/// Spoiler list: whitespace-separated candidate ids.
inline std::vector<std::string> parse_names(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& [no, line] : detail::content_lines(text))
    for (auto& w : detail::words(line)) {
      if (!valid_candidate_id(w)) detail::fail(Errc::SyntaxError, no, "bad candidate id '" + w + "'");
      out.push_back(std::move(w));
    }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SyntaxError, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Errc::SyntaxError, "cannot write '" + path.string() + "'");
}

}  // namespace copeland::io
