#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "gbs/moves.hpp"
#include "gbs/words.hpp"

namespace gbs {

namespace {
Int abs_int(Int x) { return x < 0 ? -x : x; }
}  // namespace

Int label_product(const Graph& g) {
  Int p = 1;
  for (int k = 0; k < 2 * g.edge_count(); ++k) {
    p = checked_mul(p, abs_int(g.label(EdgeId{k})));
  }
  return p;
}

std::vector<std::vector<EdgeId>> topological_chains(const Graph& g) {
  std::vector<char> branch(g.vertex_count(), 0);
  bool any = false;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (g.valence(VertexId{i}) != 2) branch[i] = 1, any = true;
  }
  if (!any && g.vertex_count() > 0) {
    // a circle: cut it at a vertex with no unit label, if there is one
    auto order = g.vertices_by_name();
    VertexId pick = order.front();
    for (VertexId x : order) {
      auto out = g.outgoing(x);
      bool big = std::none_of(out.begin(), out.end(), [&](EdgeId e) {
        return abs_int(g.label(e)) == 1;
      });
      if (big) {
        pick = x;
        break;
      }
    }
    branch[pick.index] = 1;
  }
  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::vector<EdgeId>> chains;
  for (VertexId b : g.vertices_by_name()) {
    if (!branch[b.index]) continue;
    for (EdgeId e : g.outgoing(b)) {
      if (used[e.unoriented()]) continue;
      std::vector<EdgeId> c{e};
      used[e.unoriented()] = 1;
      VertexId x = g.terminus(e);
      while (!branch[x.index]) {
        EdgeId next{-1};
        for (EdgeId f : g.outgoing(x)) {
          if (f != c.back().reversed()) next = f;
        }
        c.push_back(next);
        used[next.unoriented()] = 1;
        x = g.terminus(next);
      }
      chains.push_back(std::move(c));
    }
  }
  return chains;
}

Int segment_complexity(const Graph& g, const std::vector<EdgeId>& chain) {
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (g.terminus(chain[i - 1]) != g.origin(chain[i])) {
      throw DomainError("segment_complexity: chain is not a path");
    }
  }
  const Int n = static_cast<Int>(chain.size());
  Int k = 1;
  for (Int i = 1; i <= n; ++i) {
    EdgeId e = chain[i - 1];
    for (Int j = 0; j < i; ++j) k = checked_mul(k, abs_int(g.label(e)));
    for (Int j = 0; j < n + 1 - i; ++j) {
      k = checked_mul(k, abs_int(g.label(e.reversed())));
    }
  }
  return k;
}

// ---------------------------------------------------------------- isomorphism

namespace {

using EndKey = std::pair<int, Int>;
using EdgeKey = std::pair<EndKey, EndKey>;

EdgeKey normal_key(EndKey x, EndKey y) {
  auto sorted = [](EndKey p, EndKey q) {
    return p <= q ? EdgeKey{p, q} : EdgeKey{q, p};
  };
  EdgeKey plus = sorted(x, y);
  EdgeKey minus = sorted({x.first, -x.second}, {y.first, -y.second});
  return std::min(plus, minus);
}

std::vector<Int> vertex_signature(const Graph& g, VertexId v) {
  std::vector<Int> s;
  for (EdgeId e : g.outgoing(v)) s.push_back(abs_int(g.label(e)) * 2 + (g.is_loop(e) ? 1 : 0));
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  const int nv = a.vertex_count();
  if (nv != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::vector<Int>> sa(nv), sb(nv);
  for (int i = 0; i < nv; ++i) {
    sa[i] = vertex_signature(a, VertexId{i});
    sb[i] = vertex_signature(b, VertexId{i});
  }
  std::vector<EdgeKey> target;
  for (int i = 0; i < b.edge_count(); ++i) {
    const auto& r = b.edge_record(i);
    target.push_back(normal_key({r.origin.index, r.label_origin},
                                {r.terminus.index, r.label_terminus}));
  }
  std::sort(target.begin(), target.end());

  std::vector<int> perm(nv, -1);
  std::vector<char> taken(nv, 0);
  auto check = [&]() {
    for (int mask = 0; mask < (1 << nv); ++mask) {
      std::vector<EdgeKey> keys;
      for (int i = 0; i < a.edge_count(); ++i) {
        const auto& r = a.edge_record(i);
        Int so = (mask >> r.origin.index) & 1 ? -1 : 1;
        Int st = (mask >> r.terminus.index) & 1 ? -1 : 1;
        keys.push_back(normal_key({perm[r.origin.index], so * r.label_origin},
                                  {perm[r.terminus.index], st * r.label_terminus}));
      }
      std::sort(keys.begin(), keys.end());
      if (keys == target) return true;
    }
    return false;
  };
  std::function<bool(int)> assign = [&](int i) {
    if (i == nv) return check();
    for (int j = 0; j < nv; ++j) {
      if (taken[j] || sa[i] != sb[j]) continue;
      taken[j] = 1;
      perm[i] = j;
      if (assign(i + 1)) return true;
      taken[j] = 0;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------- move log

namespace {

void write_primitive(std::ostream& out, const MoveRecord& r) {
  switch (r.kind) {
    case MoveKind::Subdivide:
      out << "SUBDIVIDE\n";
      break;
    case MoveKind::Collapse:
      out << "COLLAPSE " << r.edge << "\n";
      break;
    case MoveKind::Expand: {
      out << "EXPAND " << r.vertex << " " << r.index << " ";
      for (std::size_t i = 0; i < r.subset.size(); ++i) {
        out << (i ? "," : "") << r.subset[i];
      }
      out << "\n";
      break;
    }
    case MoveKind::Unfold:
      out << "UNFOLD " << r.unfold_case << " " << r.vertex << "\n";
      for (const auto& s : r.steps) write_primitive(out, s);
      break;
    case MoveKind::Fold:
      out << "FOLD " << r.subtype << " " << r.edge;
      if (!r.edge2.empty()) out << " " << r.edge2;
      if (r.subtype == 'C') out << " " << r.index;
      out << "\n";
      break;
  }
}

EdgeId oriented_edge(const Graph& g, const std::string& name) {
  bool rev = !name.empty() && name[0] == '~';
  auto e = g.find_edge(rev ? name.substr(1) : name);
  if (!e) throw ParseError("unknown edge '" + name + "' in move log");
  return rev ? e->reversed() : *e;
}

VertexId named_vertex(const Graph& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) throw ParseError("unknown vertex '" + name + "' in move log");
  return *v;
}

}  // namespace

std::string serialize_moves(const std::vector<MoveRecord>& moves) {
  std::ostringstream out;
  for (const auto& r : moves) {
    write_primitive(out, r);
    for (const auto& gen : push_marking(r, r.before->marking())) {
      out << "ISO " << gen.name << " = " << format_word(*r.after, gen.word) << "\n";
    }
  }
  return out.str();
}

MoveSequence replay_moves(const Graph& g, const AllowedFamily& a,
                          std::string_view log) {
  MoveSequence s{g, a, {}};
  std::istringstream in{std::string(log)};
  std::string line;
  int lineno = 0;
  auto apply = [&](MoveResult r) {
    s.graph = std::move(r.graph);
    s.allowed = std::move(r.allowed);
    s.moves.push_back(std::move(r.record));
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (kw == "SUBDIVIDE") {
        apply(subdivide_move(s.graph, s.allowed));
      } else if (kw == "COLLAPSE") {
        std::string e;
        if (!(ls >> e)) throw ParseError("COLLAPSE needs an edge");
        apply(collapse_edge(s.graph, s.allowed, oriented_edge(s.graph, e)));
      } else if (kw == "EXPAND") {
        std::string v, list;
        Int n = 0;
        if (!(ls >> v >> n >> list)) throw ParseError("bad EXPAND line");
        std::vector<LinkElement> subset;
        std::istringstream items(list);
        std::string item;
        while (std::getline(items, item, ',')) {
          auto colon = item.rfind(':');
          if (colon == std::string::npos) throw ParseError("bad link element");
          subset.push_back({oriented_edge(s.graph, item.substr(0, colon)),
                            std::stoll(item.substr(colon + 1))});
        }
        apply(expand(s.graph, s.allowed, named_vertex(s.graph, v), n, subset));
      } else if (kw == "UNFOLD") {
        // annotation; the primitive moves follow
      } else if (kw == "FOLD") {
        std::string type, e1, rest;
        if (!(ls >> type >> e1)) throw ParseError("bad FOLD line");
        EdgeId x = oriented_edge(s.graph, e1);
        if (type == "C") {
          Int q = 0;
          if (!(ls >> q)) throw ParseError("FOLD C needs a factor");
          apply(fold_edges(s.graph, s.allowed, FoldType::C, x, x, q));
        } else {
          if (!(ls >> rest)) throw ParseError("FOLD needs two edges");
          EdgeId y = oriented_edge(s.graph, rest);
          apply(fold_edges(s.graph, s.allowed,
                           type == "A" ? FoldType::A : FoldType::B, x, y, 0));
        }
      } else if (kw == "ISO") {
        std::string name, eq;
        if (!(ls >> name >> eq) || eq != "=") throw ParseError("bad ISO line");
        std::string word;
        std::getline(ls, word);
        Path expected = parse_word(s.graph, word);
        bool found = false;
        for (const auto& gen : s.graph.marking()) {
          if (gen.name != name) continue;
          found = true;
          if (!elements_equal(s.graph, gen.word, expected)) {
            throw DomainError("replayed marking of " + name + " disagrees");
          }
        }
        if (!found) throw ParseError("ISO for unknown generator " + name);
      } else {
        throw ParseError("unknown move '" + kw + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::invalid_argument&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number");
    } catch (const std::out_of_range&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number");
    }
  }
  return s;
}

}  // namespace gbs
