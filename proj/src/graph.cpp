#include "gbs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace gbs {

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw DomainError("integer overflow in label arithmetic");
  }
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw DomainError("integer overflow in exponent arithmetic");
  }
  return r;
}

Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int floor_mod(const Power& a, Int m) {
  Int r = static_cast<Int>(a % m);
  return r < 0 ? r + m : r;
}

Int to_int(const Power& p) {
  if (p > std::numeric_limits<Int>::max() || p < std::numeric_limits<Int>::min()) {
    throw DomainError("exponent too large");
  }
  return static_cast<Int>(p);
}

Int gcd(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  return checked_mul((a < 0 ? -a : a) / g, b < 0 ? -b : b);
}

// ---------------------------------------------------------------- Graph

VertexId Graph::add_vertex(std::string name) {
  vertex_names_.push_back(std::move(name));
  return VertexId{vertex_count() - 1};
}

EdgeId Graph::add_edge(std::string name, VertexId origin, VertexId terminus,
                       Int label_origin, Int label_terminus) {
  edges_.push_back(
      EdgeRecord{std::move(name), origin, terminus, label_origin, label_terminus});
  return EdgeId{2 * (edge_count() - 1)};
}

std::string Graph::edge_name(EdgeId e) const {
  return e.is_reversed() ? "~" + base_name(e) : base_name(e);
}

VertexId Graph::origin(EdgeId e) const {
  const auto& r = edges_.at(e.unoriented());
  return e.is_reversed() ? r.terminus : r.origin;
}

Int Graph::label(EdgeId e) const {
  const auto& r = edges_.at(e.unoriented());
  return e.is_reversed() ? r.label_terminus : r.label_origin;
}

std::vector<EdgeId> Graph::outgoing(VertexId v) const {
  std::vector<EdgeId> out;
  for (int k = 0; k < 2 * edge_count(); ++k) {
    if (origin(EdgeId{k}) == v) out.push_back(EdgeId{k});
  }
  std::sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
    const auto& na = base_name(a);
    const auto& nb = base_name(b);
    if (na != nb) return na < nb;
    return a.is_reversed() < b.is_reversed();
  });
  return out;
}

std::vector<VertexId> Graph::vertices_by_name() const {
  std::vector<VertexId> out;
  for (int i = 0; i < vertex_count(); ++i) out.push_back(VertexId{i});
  std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
    return vertex_name(a) < vertex_name(b);
  });
  return out;
}

std::vector<EdgeId> Graph::edges_by_name() const {
  std::vector<EdgeId> out;
  for (int i = 0; i < edge_count(); ++i) out.push_back(EdgeId{2 * i});
  std::sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
    return base_name(a) < base_name(b);
  });
  return out;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  for (int i = 0; i < vertex_count(); ++i) {
    if (vertex_names_[i] == name) return VertexId{i};
  }
  return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  for (int i = 0; i < edge_count(); ++i) {
    if (edges_[i].name == name) return EdgeId{2 * i};
  }
  return std::nullopt;
}

bool Graph::has_name(std::string_view name) const {
  return find_vertex(name).has_value() || find_edge(name).has_value();
}

std::string Graph::fresh_name(std::string_view base) const {
  for (int k = 1;; ++k) {
    std::string candidate = std::string(base) + "_x" + std::to_string(k);
    if (!has_name(candidate)) return candidate;
  }
}

VertexId Graph::end_of(const Path& p) const {
  if (p.powers.size() != p.edges.size() + 1) {
    throw ParseError("malformed path: power/edge count mismatch");
  }
  if (p.start.index < 0 || p.start.index >= vertex_count()) {
    throw ParseError("path starts at an unknown vertex");
  }
  VertexId cur = p.start;
  for (EdgeId e : p.edges) {
    if (e.index < 0 || e.unoriented() >= edge_count()) {
      throw ParseError("path uses an unknown edge");
    }
    if (origin(e) != cur) {
      throw ParseError("invalid path: edge " + edge_name(e) +
                       " does not start at " + vertex_name(cur));
    }
    cur = terminus(e);
  }
  return cur;
}

bool Graph::is_valid_path(const Path& p) const {
  try {
    end_of(p);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

bool Graph::is_connected() const {
  if (vertex_count() == 0) return false;
  std::vector<char> seen(vertex_count(), 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  int count = 1;
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop();
    for (const auto& r : edges_) {
      for (auto [a, b] : {std::pair{r.origin, r.terminus},
                          std::pair{r.terminus, r.origin}}) {
        if (a.index == v && !seen[b.index]) {
          seen[b.index] = 1;
          ++count;
          todo.push(b.index);
        }
      }
    }
  }
  return count == vertex_count();
}

void Graph::validate() const {
  if (vertex_count() == 0) throw ParseError("graph has no vertex");
  for (const auto& r : edges_) {
    if (r.label_origin == 0 || r.label_terminus == 0) {
      throw ParseError("zero label on edge " + r.name);
    }
  }
  if (!is_connected()) throw ParseError("graph is disconnected");
  if (basepoint_.index < 0 || basepoint_.index >= vertex_count()) {
    throw ParseError("missing basepoint");
  }
  for (const auto& g : marking_) {
    if (g.word.start != basepoint_ || end_of(g.word) != basepoint_) {
      throw ParseError("marking word for " + g.name +
                       " is not a loop at the basepoint");
    }
  }
}

// ---------------------------------------------------------------- family

std::vector<Int> normalize_index_set(std::vector<Int> indices) {
  for (Int i : indices) {
    if (i < 1) throw ParseError("allowed indices must be positive");
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<Int> out;
  for (Int i : indices) {
    bool redundant = std::any_of(out.begin(), out.end(),
                                 [&](Int d) { return i % d == 0; });
    if (!redundant) out.push_back(i);
  }
  if (out.empty()) throw ParseError("empty allowed index set");
  return out;
}

void AllowedFamily::set(VertexId v, std::vector<Int> indices) {
  sets_.at(v.index) = normalize_index_set(std::move(indices));
}

void AllowedFamily::push_back(std::vector<Int> indices) {
  sets_.push_back(normalize_index_set(std::move(indices)));
}

bool AllowedFamily::admits_index(VertexId v, Int index) const {
  const auto& s = at(v);
  return std::any_of(s.begin(), s.end(),
                     [&](Int i) { return index % i == 0; });
}

bool family_contains_edge_groups(const Graph& g, const AllowedFamily& a) {
  for (int k = 0; k < 2 * g.edge_count(); ++k) {
    EdgeId e{k};
    Int idx = g.label(e) < 0 ? -g.label(e) : g.label(e);
    if (!a.admits_index(g.origin(e), idx)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- text

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) {
    return head(c) || (c >= '0' && c <= '9');
  });
}

std::optional<Int> parse_int(std::string_view s) {
  Int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::optional<Power> parse_power(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  std::string_view digits = s;
  if (!digits.empty() && digits[0] == '-') digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return Power(std::string(s));
}

std::string strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return std::string(line.substr(0, pos));
}

}  // namespace

Path parse_word(const Graph& g, std::string_view text) {
  return parse_word(g, text, g.basepoint());
}

Path parse_word(const Graph& g, std::string_view text, VertexId empty_start) {
  auto tokens = tokenize(text);
  Path p;
  p.start = empty_start;
  bool started = false;
  VertexId cur = empty_start;
  for (const auto& tok : tokens) {
    bool reversed = !tok.empty() && tok[0] == '~';
    std::string body = reversed ? tok.substr(1) : tok;
    auto caret = body.find('^');
    if (caret != std::string::npos) {
      if (reversed) throw ParseError("bad word token '" + tok + "'");
      auto v = g.find_vertex(body.substr(0, caret));
      auto k = parse_power(std::string_view(body).substr(caret + 1));
      if (!v || !k) throw ParseError("bad word token '" + tok + "'");
      if (!started) {
        p.start = cur = *v;
        started = true;
      }
      if (*v != cur) {
        throw ParseError("invalid path: " + tok + " is not at vertex " +
                         g.vertex_name(cur));
      }
      p.powers.back() += *k;
      continue;
    }
    if (!reversed) {
      if (auto v = g.find_vertex(body)) {
        if (!started) {
          p.start = cur = *v;
          started = true;
        }
        if (*v != cur) {
          throw ParseError("invalid path: " + tok + " is not at vertex " +
                           g.vertex_name(cur));
        }
        p.powers.back() += 1;
        continue;
      }
    }
    auto e = g.find_edge(body);
    if (!e) throw ParseError("unknown name '" + body + "' in word");
    EdgeId oe = reversed ? e->reversed() : *e;
    if (!started) {
      p.start = cur = g.origin(oe);
      started = true;
    }
    if (g.origin(oe) != cur) {
      throw ParseError("invalid path: edge " + tok + " does not start at " +
                       g.vertex_name(cur));
    }
    p.edges.push_back(oe);
    p.powers.push_back(0);
    cur = g.terminus(oe);
  }
  return p;
}

std::string format_word(const Graph& g, const Path& p) {
  std::string out;
  auto emit = [&](const std::string& s) {
    if (!out.empty()) out += ' ';
    out += s;
  };
  VertexId cur = p.start;
  for (std::size_t i = 0; i <= p.edges.size(); ++i) {
    const Power& k = p.powers[i];
    if (k == 1) {
      emit(g.vertex_name(cur));
    } else if (k != 0) {
      emit(g.vertex_name(cur) + "^" + k.str());
    }
    if (i < p.edges.size()) {
      emit(g.edge_name(p.edges[i]));
      cur = g.terminus(p.edges[i]);
    }
  }
  if (out.empty()) out = g.vertex_name(p.start) + "^0";
  return out;
}

GraphDocument parse_graph(std::string_view text) {
  Graph g;
  std::vector<std::pair<int, std::vector<std::string>>> allowed_lines;
  std::vector<std::pair<int, std::string>> gen_lines;
  std::optional<std::string> basepoint;
  int basepoint_line = 0;
  bool header = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  auto need_vertex = [&](const std::string& name) {
    auto v = g.find_vertex(name);
    if (!v) throw fail("unknown vertex '" + name + "'");
    return *v;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "gbs" || tok[1] != "v1") {
        throw fail("expected header 'gbs v1'");
      }
      header = true;
      continue;
    }
    const auto& kw = tok[0];
    if (kw == "vertex") {
      if (tok.size() != 2 || !valid_name(tok[1])) throw fail("bad vertex line");
      if (g.has_name(tok[1])) throw fail("duplicate name '" + tok[1] + "'");
      g.add_vertex(tok[1]);
    } else if (kw == "edge") {
      if (tok.size() != 6 || !valid_name(tok[1])) throw fail("bad edge line");
      if (g.has_name(tok[1])) throw fail("duplicate name '" + tok[1] + "'");
      VertexId o = need_vertex(tok[2]);
      VertexId t = need_vertex(tok[3]);
      auto lo = parse_int(tok[4]);
      auto lt = parse_int(tok[5]);
      if (!lo || !lt) throw fail("labels must be integers");
      if (*lo == 0 || *lt == 0) throw fail("zero label on edge " + tok[1]);
      g.add_edge(tok[1], o, t, *lo, *lt);
    } else if (kw == "basepoint") {
      if (tok.size() != 2) throw fail("bad basepoint line");
      basepoint = tok[1];
      basepoint_line = lineno;
    } else if (kw == "allowed") {
      if (tok.size() < 3) throw fail("bad allowed line");
      allowed_lines.emplace_back(lineno, tok);
    } else if (kw == "gen") {
      if (tok.size() < 3 || tok[2] != "=" || !valid_name(tok[1])) {
        throw fail("bad gen line");
      }
      auto eq = line.find('=');
      gen_lines.emplace_back(lineno, line);
      (void)eq;
    } else {
      throw fail("unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError("line 1: expected header 'gbs v1'");
  if (!basepoint) throw ParseError("missing basepoint");
  {
    lineno = basepoint_line;
    g.set_basepoint(need_vertex(*basepoint));
  }
  AllowedFamily a(g.vertex_count());
  for (const auto& [ln, tok] : allowed_lines) {
    lineno = ln;
    VertexId v = need_vertex(tok[1]);
    std::vector<Int> idx;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      auto k = parse_int(tok[i]);
      if (!k || *k < 1) throw fail("allowed indices must be positive integers");
      idx.push_back(*k);
    }
    a.set(v, idx);
  }
  std::vector<GeneratorWord> marking;
  for (const auto& [ln, line] : gen_lines) {
    lineno = ln;
    auto tok = tokenize(line);
    auto eq = line.find('=');
    try {
      Path w = parse_word(g, std::string_view(line).substr(eq + 1));
      if (w.start != g.basepoint() || g.end_of(w) != g.basepoint()) {
        throw ParseError("marking word is not a loop at the basepoint");
      }
      marking.push_back({tok[1], std::move(w)});
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  }
  g.set_marking(std::move(marking));
  if (g.vertex_count() == 0) throw ParseError("graph has no vertex");
  if (!g.is_connected()) throw ParseError("graph is disconnected");
  g.validate();
  return {std::move(g), std::move(a)};
}

std::string serialize_graph(const Graph& g, const AllowedFamily& a) {
  std::ostringstream out;
  out << "gbs v1\n";
  for (int i = 0; i < g.vertex_count(); ++i) {
    out << "vertex " << g.vertex_name(VertexId{i}) << "\n";
  }
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& r = g.edge_record(i);
    out << "edge " << r.name << " " << g.vertex_name(r.origin) << " "
        << g.vertex_name(r.terminus) << " " << r.label_origin << " "
        << r.label_terminus << "\n";
  }
  out << "basepoint " << g.vertex_name(g.basepoint()) << "\n";
  for (int i = 0; i < g.vertex_count() && i < a.size(); ++i) {
    const auto& s = a.at(VertexId{i});
    if (s == std::vector<Int>{1}) continue;
    out << "allowed " << g.vertex_name(VertexId{i});
    for (Int k : s) out << " " << k;
    out << "\n";
  }
  for (const auto& gen : g.marking()) {
    out << "gen " << gen.name << " = " << format_word(g, gen.word) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------- structure

Graph subdivide_loops(const Graph& g) {
  return subdivide_loops(g, AllowedFamily(g.vertex_count())).graph;
}

GraphDocument subdivide_loops(const Graph& g, const AllowedFamily& a) {
  Graph out;
  AllowedFamily fam;
  for (int i = 0; i < g.vertex_count(); ++i) {
    out.add_vertex(g.vertex_name(VertexId{i}));
    fam.push_back(a.at(VertexId{i}));
  }
  // Image of each oriented old edge as one or two new oriented edges.
  std::vector<std::vector<EdgeId>> image(2 * g.edge_count());
  Graph names = g;  // reserve fresh names against old and new names
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& r = g.edge_record(i);
    if (r.origin != r.terminus) {
      EdgeId ne = out.add_edge(r.name, r.origin, r.terminus, r.label_origin,
                               r.label_terminus);
      image[2 * i] = {ne};
      image[2 * i + 1] = {ne.reversed()};
      continue;
    }
    std::string mid = names.fresh_name(r.name);
    names.add_vertex(mid);
    std::string first = names.fresh_name(r.name);
    names.add_vertex(first);
    std::string second = names.fresh_name(r.name);
    names.add_vertex(second);
    VertexId w = out.add_vertex(mid);
    // New vertex group = old edge group; index-i subgroups of it have index
    // i * |λ(e)| in G_v.
    Int p = r.label_origin < 0 ? -r.label_origin : r.label_origin;
    std::vector<Int> inherited;
    for (Int i0 : a.at(r.origin)) inherited.push_back(i0 / gcd(i0, p));
    fam.push_back(inherited);
    EdgeId e1 = out.add_edge(first, r.origin, w, r.label_origin, 1);
    EdgeId e2 = out.add_edge(second, w, r.origin, 1, r.label_terminus);
    image[2 * i] = {e1, e2};
    image[2 * i + 1] = {e2.reversed(), e1.reversed()};
  }
  out.set_basepoint(g.basepoint());
  std::vector<GeneratorWord> marking;
  for (const auto& gen : g.marking()) {
    Path p;
    p.start = gen.word.start;
    p.powers = {gen.word.powers[0]};
    for (std::size_t k = 0; k < gen.word.edges.size(); ++k) {
      const auto& img = image[gen.word.edges[k].index];
      for (std::size_t j = 0; j < img.size(); ++j) {
        p.edges.push_back(img[j]);
        p.powers.push_back(0);
      }
      p.powers.back() = gen.word.powers[k + 1];
    }
    marking.push_back({gen.name, std::move(p)});
  }
  out.set_marking(std::move(marking));
  return {std::move(out), std::move(fam)};
}

int betti_number(const Graph& g) {
  return g.edge_count() - g.vertex_count() + 1;
}

bool is_collapsible(const Graph& g, EdgeId e) {
  if (g.is_loop(e)) return false;
  Int l = g.label(e.reversed());
  return l == 1 || l == -1;
}

bool is_reduced(const Graph& g) {
  for (int k = 0; k < 2 * g.edge_count(); ++k) {
    if (is_collapsible(g, EdgeId{k})) return false;
  }
  return true;
}

}  // namespace gbs
