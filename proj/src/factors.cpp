#include "gbs/factors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "gbs/words.hpp"

namespace gbs {

namespace {

Int abs_int(Int x) { return x < 0 ? -x : x; }

// Caps the (vertex, exponent) search along the fixed set of an elliptic element.
constexpr std::size_t kFixedSetCap = 4096;
// Iteration cap of the unfolding loop; far beyond the edge-count bound.
constexpr int kIterationCap = 100000;

// Path in `from` rewritten into `to` by vertex and edge names.
Path rename_path(const Graph& from, const Graph& to, const Path& p) {
  Path out;
  out.start = *to.find_vertex(from.vertex_name(p.start));
  out.powers = p.powers;
  for (EdgeId e : p.edges) {
    EdgeId f = *to.find_edge(from.base_name(e));
    out.edges.push_back(e.is_reversed() ? f.reversed() : f);
  }
  return out;
}

std::vector<MapStep> forward_steps(const std::vector<MoveRecord>& moves) {
  std::vector<MapStep> out;
  for (const auto& r : moves) out.push_back({r.before, r.after, r.forward});
  return out;
}

std::vector<MapStep> backward_steps(const std::vector<MoveRecord>& moves) {
  std::vector<MapStep> out;
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    out.push_back({it->after, it->before, it->backward});
  }
  return out;
}

}  // namespace

std::vector<GeneratorWord> spanning_generators(const Graph& g) {
  std::vector<GeneratorWord> out;
  auto name = [&] { return "g" + std::to_string(out.size() + 1); };
  auto delta = [&](VertexId u) { return tree_path(g, g.basepoint(), u); };
  for (VertexId u : g.vertices_by_name()) {
    Path d = delta(u);
    Path w = concat(g, concat(g, d, vertex_power(u, 1)), invert(g, d));
    out.push_back({name(), reduce_path(g, w)});
  }
  for (EdgeId e : g.edges_by_name()) {
    Path w = concat(g, concat(g, delta(g.origin(e)), edge_letter(g, e)),
                    invert(g, delta(g.terminus(e))));
    w = reduce_path(g, w);
    if (w.edges.empty() && w.powers[0] == 0) continue;
    out.push_back({name(), w});
  }
  return out;
}

// ---------------------------------------------------------------- complexity

ComplexityTriple complexity(const Graph& g) {
  Classification c = classify_elementary(g);
  if (c.kind == ElementaryKind::Z || c.kind == ElementaryKind::Z2 ||
      c.kind == ElementaryKind::KleinBottle) {
    return {};
  }
  Graph r = reduce_graph(g, AllowedFamily(g.vertex_count())).graph;
  ComplexityTriple t;
  t.b1 = betti_number(r);
  for (int i = 0; i < r.vertex_count(); ++i) {
    auto out = r.outgoing(VertexId{i});
    if (out.empty()) continue;
    bool big = std::none_of(out.begin(), out.end(),
                            [&](EdgeId e) { return abs_int(r.label(e)) == 1; });
    if (!big) continue;
    Int d = 0;
    for (EdgeId e : out) d = gcd(d, r.label(e));
    ++t.m;
    t.sigma += d;
  }
  return t;
}

std::string to_string(const ComplexityTriple& c) {
  return "(" + std::to_string(c.b1) + "," + std::to_string(c.m) + "," +
         std::to_string(c.sigma) + ")";
}

// ---------------------------------------------------------------- maps

Path MapStep::apply(const Path& loop) const {
  return map_loop(*source, *target, map, loop);
}

Path apply_steps(const std::vector<MapStep>& steps, Path loop) {
  for (const auto& s : steps) loop = s.apply(loop);
  return loop;
}

std::vector<GeneratorWord> Factor::embedded_generators() const {
  std::vector<GeneratorWord> out;
  for (const auto& gen : spanning_generators(graph)) {
    out.push_back({gen.name, apply_steps(up, gen.word)});
  }
  return out;
}

Factor whole_factor(const Graph& g, const AllowedFamily& a,
                    const std::vector<Path>& collection) {
  Factor f;
  f.graph = g;
  f.allowed = a;
  auto ctx = std::make_shared<FactorContext>();
  ctx->whole = true;
  ctx->host = std::make_shared<const Graph>(g);
  ctx->component = ctx->host;
  ctx->factor = ctx->host;
  for (int i = 0; i < g.vertex_count(); ++i) {
    ctx->vertices.push_back(g.vertex_name(VertexId{i}));
  }
  for (int i = 0; i < g.edge_count(); ++i) ctx->edges.push_back(g.edge_record(i).name);
  f.context = ctx;
  f.collection = collection;
  for (std::size_t i = 0; i < collection.size(); ++i) {
    f.collection_index.push_back(static_cast<int>(i));
  }
  return f;
}

// ---------------------------------------------------------------- membership

std::optional<Path> to_factor(const Path& x, const FactorContext& ctx) {
  Path y = x;
  if (ctx.parent) {
    auto up = to_factor(x, *ctx.parent);
    if (!up) return std::nullopt;
    y = *up;
  }
  if (ctx.whole) return y;
  const Graph& host = *ctx.host;
  const Graph& comp = *ctx.component;
  Path z = apply_steps(ctx.run_forward, y);
  auto cr = cyclically_reduce(host, z);
  std::set<std::string> vs(ctx.vertices.begin(), ctx.vertices.end());
  std::set<std::string> es(ctx.edges.begin(), ctx.edges.end());

  Path inside;  // loop in comp, not yet based at its basepoint
  if (!cr.core.edges.empty()) {
    if (!vs.count(host.vertex_name(cr.core.start))) return std::nullopt;
    for (EdgeId e : cr.core.edges) {
      if (!es.count(host.base_name(e))) return std::nullopt;
    }
    inside = rename_path(host, comp, cr.core);
  } else {
    // walk the fixed set of a_u^k until it meets the component
    struct State {
      VertexId v;
      Power k;
    };
    std::map<std::pair<int, Power>, bool> seen;
    std::queue<State> todo;
    todo.push({cr.core.start, cr.core.powers[0]});
    seen[{cr.core.start.index, cr.core.powers[0]}] = true;
    std::optional<State> hit;
    while (!todo.empty() && seen.size() < kFixedSetCap) {
      State s = todo.front();
      todo.pop();
      if (vs.count(host.vertex_name(s.v))) {
        hit = s;
        break;
      }
      if (s.k == 0) {
        hit = State{*host.find_vertex(ctx.vertices.front()), 0};
        break;
      }
      for (EdgeId e : host.outgoing(s.v)) {
        if (s.k % host.label(e) != 0) continue;
        Power k2 = s.k / host.label(e) * host.label(e.reversed());
        State t{host.terminus(e), k2};
        if (seen.emplace(std::pair{t.v.index, t.k}, true).second) todo.push(t);
      }
    }
    if (!hit) return std::nullopt;
    inside = vertex_power(*comp.find_vertex(host.vertex_name(hit->v)), hit->k);
  }
  Path tau = tree_path(comp, comp.basepoint(), inside.start);
  Path loop = reduce_path(comp, concat(comp, concat(comp, tau, inside), invert(comp, tau)));
  return apply_steps(ctx.local_forward, loop);
}

bool is_peripheral(const FactorSystem& s1, const FactorSystem& s2) {
  for (const auto& f1 : s1.factors) {
    auto gens = f1.embedded_generators();
    bool placed = false;
    for (const auto& f2 : s2.factors) {
      bool all = std::all_of(gens.begin(), gens.end(), [&](const GeneratorWord& g) {
        return to_factor(g.word, *f2.context).has_value();
      });
      if (all) {
        placed = true;
        break;
      }
    }
    if (!placed) return false;
  }
  return true;
}

// ---------------------------------------------------------------- extraction

std::vector<EdgeId> avoided_edge_orbits(const Graph& g,
                                        const std::vector<Path>& collection) {
  std::vector<char> crossed(g.edge_count(), 0);
  for (const auto& x : collection) {
    auto d = axis_fundamental_domain(g, x);
    for (EdgeId e : d.core.edges) crossed[e.unoriented()] = 1;
  }
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges_by_name()) {
    if (!crossed[e.unoriented()]) out.push_back(e);
  }
  return out;
}

FactorSystem extract_factor_system(const Graph& g, const AllowedFamily& a,
                                   const std::vector<EdgeId>& avoided,
                                   const std::vector<Path>& collection,
                                   const Factor& input,
                                   const std::vector<MoveRecord>& history) {
  std::vector<char> cut(g.edge_count(), 0);
  for (EdgeId e : avoided) cut[e.unoriented()] = 1;
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int i = 0; i < g.edge_count(); ++i) {
    if (cut[i]) continue;
    const auto& r = g.edge_record(i);
    parent[find(r.origin.index)] = find(r.terminus.index);
  }
  // components ordered by their least vertex name
  std::vector<std::vector<VertexId>> comps;
  {
    std::map<int, int> slot;
    for (VertexId v : g.vertices_by_name()) {
      int root = find(v.index);
      if (!slot.count(root)) {
        slot[root] = static_cast<int>(comps.size());
        comps.emplace_back();
      }
      comps[slot[root]].push_back(v);
    }
  }

  auto host = std::make_shared<const Graph>(
      [&] {
        Graph h = g;
        h.set_marking({});
        return h;
      }());
  auto run_forward = forward_steps(history);
  auto run_backward = backward_steps(history);

  FactorSystem sys;
  std::vector<int> factor_of_comp(comps.size(), -1);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    std::vector<int> local(g.vertex_count(), -1);
    Graph c;
    AllowedFamily ca;
    for (int i = 0; i < g.vertex_count(); ++i) {
      if (find(i) != find(comps[ci].front().index)) continue;
      local[i] = c.vertex_count();
      c.add_vertex(g.vertex_name(VertexId{i}));
      ca.push_back(a.at(VertexId{i}));
    }
    std::vector<std::string> edge_names;
    for (int i = 0; i < g.edge_count(); ++i) {
      const auto& r = g.edge_record(i);
      if (cut[i] || local[r.origin.index] < 0) continue;
      c.add_edge(r.name, VertexId{local[r.origin.index]},
                 VertexId{local[r.terminus.index]}, r.label_origin, r.label_terminus);
      edge_names.push_back(r.name);
    }
    if (c.edge_count() == 0) continue;  // a bare vertex: cyclic
    c.set_basepoint(VertexId{0});
    // survivors of pruning do not depend on the basepoint
    Graph pruned = minimalize(c, ca).graph;
    std::string base = pruned.vertex_name(pruned.vertices_by_name().front());
    c.set_basepoint(*c.find_vertex(base));
    auto seq = minimalize(c, ca);
    Graph reduced = reduce_graph(seq.graph, seq.allowed).graph;
    if (reduced.vertex_count() == 1 && reduced.edge_count() == 0) continue;

    auto comp_graph = std::make_shared<const Graph>(c);
    auto ctx = std::make_shared<FactorContext>();
    ctx->parent = input.context;
    ctx->run_forward = run_forward;
    ctx->host = host;
    for (int i = 0; i < c.vertex_count(); ++i) {
      ctx->vertices.push_back(c.vertex_name(VertexId{i}));
    }
    ctx->edges = edge_names;
    ctx->component = comp_graph;
    ctx->local_forward = forward_steps(seq.moves);

    Factor f;
    f.graph = seq.graph;
    f.graph.set_marking(spanning_generators(f.graph));
    f.allowed = seq.allowed;
    ctx->factor = std::make_shared<const Graph>(f.graph);
    f.context = ctx;

    MapStep inclusion;
    inclusion.source = comp_graph;
    inclusion.target = host;
    for (int i = 0; i < c.vertex_count(); ++i) {
      VertexId hv = *g.find_vertex(c.vertex_name(VertexId{i}));
      inclusion.map.vertex_target.push_back(hv);
      inclusion.map.vertex_image.push_back(vertex_power(hv, 1));
    }
    for (int i = 0; i < c.edge_count(); ++i) {
      inclusion.map.edge_image.push_back(
          edge_letter(g, *g.find_edge(c.edge_record(i).name)));
    }
    inclusion.map.prefix = tree_path(g, g.basepoint(), *g.find_vertex(base));

    f.up = backward_steps(seq.moves);
    f.up.push_back(inclusion);
    f.up.insert(f.up.end(), run_backward.begin(), run_backward.end());
    f.up.insert(f.up.end(), input.up.begin(), input.up.end());

    factor_of_comp[ci] = static_cast<int>(sys.factors.size());
    sys.factors.push_back(std::move(f));
  }

  for (std::size_t i = 0; i < collection.size(); ++i) {
    auto cr = cyclically_reduce(g, collection[i]);
    int root = find(cr.core.start.index);
    int slot = -1;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      if (find(comps[ci].front().index) == root) slot = factor_of_comp[ci];
    }
    if (slot < 0) {
      throw InternalError("collection element lies in an elliptic component");
    }
    Factor& f = sys.factors[slot];
    const FactorContext& ctx = *f.context;
    for (EdgeId e : cr.core.edges) {
      if (std::find(ctx.edges.begin(), ctx.edges.end(), g.base_name(e)) ==
          ctx.edges.end()) {
        throw InternalError("axis crosses an avoided edge");
      }
    }
    const Graph& comp = *ctx.component;
    Path inside = rename_path(g, comp, cr.core);
    Path tau = tree_path(comp, comp.basepoint(), inside.start);
    Path loop = reduce_path(
        comp, concat(comp, concat(comp, tau, inside), invert(comp, tau)));
    f.collection.push_back(apply_steps(ctx.local_forward, loop));
    f.collection_index.push_back(input.collection_index.at(i));
  }

  sys.is_proper = !(sys.factors.size() == 1 &&
                    sys.factors[0].context->vertices.size() ==
                        static_cast<std::size_t>(g.vertex_count()) &&
                    sys.factors[0].context->edges.size() ==
                        static_cast<std::size_t>(g.edge_count()));
  return sys;
}

FactorSystem extract_factor_system(const Graph& g, const AllowedFamily& a,
                                   const std::vector<EdgeId>& avoided,
                                   const std::vector<Path>& collection) {
  return extract_factor_system(g, a, avoided, collection,
                               whole_factor(g, a, collection), {});
}

// ---------------------------------------------------------------- driver

SimplicityResult check_simple(const Graph& g, const AllowedFamily& a,
                              const std::vector<Path>& collection) {
  return check_simple(whole_factor(g, a, collection));
}

SimplicityResult check_simple(const Factor& input) {
  const Graph& g = input.graph;
  const AllowedFamily& a = input.allowed;
  if (input.collection.empty()) throw DomainError("empty collection");
  if (a.size() != g.vertex_count()) {
    throw DomainError("allowed family does not match the graph");
  }
  if (!family_contains_edge_groups(g, a)) {
    throw DomainError("allowed family misses an edge group of the graph");
  }
  for (const auto& x : input.collection) {
    if (x.start != g.basepoint() || g.end_of(x) != g.basepoint()) {
      throw DomainError("collection word is not a loop at the basepoint");
    }
    if (!is_loxodromic(g, x)) {
      throw DomainError("elliptic element in collection: " + format_word(g, x));
    }
  }

  SimplicityResult res;
  res.classification = classify_elementary(g);
  if (res.classification.kind != ElementaryKind::NonElementary) {
    res.by_classification = true;
    res.certificate = g;
    res.certificate_allowed = a;
    res.certificate_collection = input.collection;
    return res;
  }

  Graph cur = g;
  AllowedFamily fam = a;
  std::vector<Path> coll = input.collection;
  auto adopt = [&](MoveRecord rec, Graph next, AllowedFamily next_a) {
    for (auto& x : coll) x = rec.push(x);
    cur = std::move(next);
    fam = std::move(next_a);
    res.history.push_back(std::move(rec));
  };
  {
    auto seq = minimalize(cur, fam);
    for (auto& rec : seq.moves) {
      for (auto& x : coll) x = rec.push(x);
      res.history.push_back(std::move(rec));
    }
    cur = std::move(seq.graph);
    fam = std::move(seq.allowed);
    auto sub = subdivide_move(cur, fam);
    adopt(std::move(sub.record), std::move(sub.graph), std::move(sub.allowed));
  }
  for (const auto& x : coll) res.total_length += translation_length(cur, x);
  res.initial_edges = cur.edge_count();
  res.max_edges = cur.edge_count();
  const Int bound = res.total_length + res.initial_edges + 1;

  for (int iter = 0; iter < kIterationCap; ++iter) {
    auto avoided = avoided_edge_orbits(cur, coll);
    if (!avoided.empty()) {
      res.system = extract_factor_system(cur, fam, avoided, coll, input, res.history);
      if (res.system.factors.empty() || !res.system.is_proper) {
        throw InternalError("degenerate factor extraction");
      }
      res.simple = true;
      return res;
    }
    std::optional<AdmissibleCut> cut;
    for (const auto& wh : whitehead_graphs(cur, coll)) {
      cut = find_admissible_cut(wh, fam);
      if (cut) break;
    }
    if (!cut) {
      res.certificate = cur;
      res.certificate_allowed = fam;
      res.certificate_collection = coll;
      return res;
    }
    auto step = unfold_step(cur, fam, coll, *cut);
    adopt(std::move(step.record), std::move(step.graph), std::move(step.allowed));
    res.max_edges = std::max(res.max_edges, cur.edge_count());
    if (cur.edge_count() > bound) {
      throw InternalError("edge count exceeded the termination bound");
    }
  }
  throw InternalError("unfolding loop did not terminate");
}

namespace {

void descend(const Factor& f, MinimalResult& out, std::vector<Factor>& finals) {
  auto res = check_simple(f);
  if (!res.simple) {
    finals.push_back(f);
    return;
  }
  out.simple_outputs.push_back(res.system);
  ComplexityTriple here = complexity(f.graph);
  for (const auto& child : res.system.factors) {
    if (child.collection.empty()) continue;  // nothing to contain
    ComplexityTriple c = complexity(child.graph);
    out.recursion.push_back({here, c});
    if (!(c < here)) throw InternalError("complexity did not decrease");
    descend(child, out, finals);
  }
}

}  // namespace

MinimalResult minimal_factor_system(const Graph& g, const AllowedFamily& a,
                                    const std::vector<Path>& collection) {
  return minimal_factor_system(whole_factor(g, a, collection));
}

MinimalResult minimal_factor_system(const Factor& input) {
  MinimalResult out;
  std::vector<Factor> finals;
  descend(input, out, finals);
  out.system.is_proper = !(finals.size() == 1 && finals[0].context == input.context);
  out.system.factors = std::move(finals);
  return out;
}

// ---------------------------------------------------------------- text

namespace {

void write_factor(std::ostream& out, const Graph& top, const Factor& f, int i) {
  out << "factor " << i << "\n";
  out << serialize_graph(f.graph, f.allowed);
  for (const auto& gen : f.embedded_generators()) {
    out << "embed " << gen.name << " = " << format_word(top, gen.word) << "\n";
  }
  out << "end\n";
}

}  // namespace

std::string serialize_result(const Graph& top, const SimplicityResult& r) {
  std::ostringstream out;
  if (r.simple) {
    out << "SIMPLE\n";
    int i = 1;
    for (const auto& f : r.system.factors) write_factor(out, top, f, i++);
  } else {
    out << "NOTSIMPLE\n";
    if (r.by_classification) {
      out << "# classification " << to_string(r.classification) << "\n";
    }
    out << serialize_graph(r.certificate, r.certificate_allowed);
    out << "end\n";
  }
  return out.str();
}

std::string serialize_system(const Graph& top, const FactorSystem& s) {
  std::ostringstream out;
  out << "SYSTEM " << (s.is_proper ? "proper" : "improper") << "\n";
  int i = 1;
  for (const auto& f : s.factors) write_factor(out, top, f, i++);
  return out.str();
}

ParsedResult parse_result(std::string_view text) {
  ParsedResult res;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  bool in_block = false;
  std::string doc;
  ParsedFactor cur;
  auto close = [&] {
    cur.document = parse_graph(doc);
    res.factors.push_back(std::move(cur));
    cur = ParsedFactor{};
    doc.clear();
    in_block = false;
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (!header) {
      header = true;
      if (kw == "SIMPLE" || kw == "SYSTEM") {
        res.simple = kw == "SIMPLE" || line.find("improper") == std::string::npos;
      } else if (kw == "NOTSIMPLE") {
        res.simple = false;
        in_block = true;
      } else {
        throw ParseError("result must start with SIMPLE, NOTSIMPLE or SYSTEM");
      }
      continue;
    }
    if (kw == "factor") {
      if (in_block) throw ParseError("missing end before factor");
      in_block = true;
    } else if (kw == "end") {
      if (!in_block) throw ParseError("unexpected end");
      close();
    } else if (kw == "embed") {
      std::string name, eq;
      ls >> name >> eq;
      std::string word;
      std::getline(ls, word);
      auto first = word.find_first_not_of(' ');
      cur.embed.emplace_back(name, first == std::string::npos ? "" : word.substr(first));
    } else {
      if (!in_block) throw ParseError("graph text outside a block");
      doc += line + "\n";
    }
  }
  if (in_block) throw ParseError("unterminated block");
  return res;
}

}  // namespace gbs
