#include "gbs/moves.hpp"

#include <algorithm>

#include "gbs/words.hpp"

namespace gbs {

GraphMap identity_map(const Graph& g) {
  GraphMap m;
  for (int i = 0; i < g.vertex_count(); ++i) {
    m.vertex_target.push_back(VertexId{i});
    m.vertex_image.push_back(vertex_power(VertexId{i}, 1));
  }
  for (int i = 0; i < g.edge_count(); ++i) {
    m.edge_image.push_back(edge_letter(g, EdgeId{2 * i}));
  }
  m.prefix = empty_path(g.basepoint());
  return m;
}

namespace {

Path vertex_image_power(const Graph& target, const GraphMap& m, VertexId v,
                        const Power& k) {
  const Path& img = m.vertex_image.at(v.index);
  if (img.edges.empty()) return vertex_power(img.start, img.powers[0] * k);
  return power(target, img, to_int(k));
}

Path edge_image(const Graph& target, const GraphMap& m, EdgeId e) {
  const Path& img = m.edge_image.at(e.unoriented());
  return e.is_reversed() ? invert(target, img) : img;
}

}  // namespace

Path map_path(const Graph& source, const Graph& target, const GraphMap& m,
              const Path& p) {
  source.end_of(p);
  Path out = vertex_image_power(target, m, p.start, p.powers[0]);
  VertexId cur = p.start;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    out = concat(target, out, edge_image(target, m, p.edges[i]));
    cur = source.terminus(p.edges[i]);
    out = concat(target, out, vertex_image_power(target, m, cur, p.powers[i + 1]));
  }
  return reduce_path(target, out);
}

Path map_loop(const Graph& source, const Graph& target, const GraphMap& m,
              const Path& loop) {
  Path img = map_path(source, target, m, loop);
  return reduce_path(target,
                     concat(target, concat(target, m.prefix, img),
                            invert(target, m.prefix)));
}

GraphMap compose(const Graph& middle, const Graph& target, const GraphMap& first,
                 const GraphMap& second) {
  GraphMap out;
  for (std::size_t v = 0; v < first.vertex_target.size(); ++v) {
    out.vertex_target.push_back(
        second.vertex_target.at(first.vertex_target[v].index));
    out.vertex_image.push_back(
        map_path(middle, target, second, first.vertex_image[v]));
  }
  for (const auto& img : first.edge_image) {
    out.edge_image.push_back(map_path(middle, target, second, img));
  }
  out.prefix = reduce_path(
      target, concat(target, second.prefix,
                     map_path(middle, target, second, first.prefix)));
  return out;
}

Path MoveRecord::push(const Path& loop) const {
  return map_loop(*before, *after, forward, loop);
}

Path MoveRecord::pull(const Path& loop) const {
  if (backward.vertex_target.empty()) {
    throw InternalError("move has no backward map");
  }
  return map_loop(*after, *before, backward, loop);
}

std::vector<GeneratorWord> push_marking(const MoveRecord& r,
                                        const std::vector<GeneratorWord>& m) {
  std::vector<GeneratorWord> out;
  for (const auto& gen : m) out.push_back({gen.name, r.push(gen.word)});
  return out;
}

namespace {

Int abs_int(Int x) { return x < 0 ? -x : x; }

void finish(MoveResult& r, const Graph& before) {
  r.record.before = std::make_shared<const Graph>(before);
  Graph after = r.graph;
  after.set_marking({});
  r.record.after = std::make_shared<const Graph>(after);
  r.graph.set_marking(push_marking(r.record, before.marking()));
}

}  // namespace

MoveResult subdivide_move(const Graph& g, const AllowedFamily& a) {
  GraphDocument doc = subdivide_loops(g, a);
  const Graph& h = doc.graph;
  MoveResult r{h, doc.allowed, {}};
  r.record.kind = MoveKind::Subdivide;
  GraphMap fwd;
  GraphMap bwd;
  for (int i = 0; i < g.vertex_count(); ++i) {
    fwd.vertex_target.push_back(VertexId{i});
    fwd.vertex_image.push_back(vertex_power(VertexId{i}, 1));
  }
  for (int i = 0; i < h.vertex_count(); ++i) {
    bwd.vertex_target.push_back(VertexId{i});
    bwd.vertex_image.push_back(vertex_power(VertexId{i}, 1));
  }
  bwd.edge_image.resize(h.edge_count());
  int next_edge = 0;
  int next_vertex = g.vertex_count();
  for (int i = 0; i < g.edge_count(); ++i) {
    const auto& rec = g.edge_record(i);
    if (rec.origin != rec.terminus) {
      fwd.edge_image.push_back(edge_letter(h, EdgeId{2 * next_edge}));
      bwd.edge_image[next_edge] = edge_letter(g, EdgeId{2 * i});
      ++next_edge;
      continue;
    }
    EdgeId first{2 * next_edge};
    EdgeId second{2 * next_edge + 2};
    fwd.edge_image.push_back(
        concat(h, edge_letter(h, first), edge_letter(h, second)));
    bwd.edge_image[next_edge] = edge_letter(g, EdgeId{2 * i});
    bwd.edge_image[next_edge + 1] = empty_path(rec.origin);
    bwd.vertex_target[next_vertex] = rec.origin;
    bwd.vertex_image[next_vertex] = vertex_power(rec.origin, rec.label_terminus);
    next_edge += 2;
    ++next_vertex;
  }
  fwd.prefix = empty_path(h.basepoint());
  bwd.prefix = empty_path(g.basepoint());
  r.record.forward = std::move(fwd);
  r.record.backward = std::move(bwd);
  finish(r, g);
  return r;
}

MoveResult collapse_edge(const Graph& g, const AllowedFamily& a, EdgeId eps) {
  if (g.is_loop(eps) || abs_int(g.label(eps.reversed())) != 1) {
    throw DomainError("edge " + g.edge_name(eps) + " is not collapsible");
  }
  const VertexId v = g.origin(eps);
  const VertexId w = g.terminus(eps);
  const Int factor = checked_mul(g.label(eps), g.label(eps.reversed()));
  auto renum = [&](VertexId x) {
    if (x == w) x = v;
    return VertexId{x.index > w.index ? x.index - 1 : x.index};
  };

  MoveResult r;
  Graph& h = r.graph;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (i != w.index) h.add_vertex(g.vertex_name(VertexId{i}));
  }
  std::vector<int> new_edge(g.edge_count(), -1);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (i == eps.unoriented()) continue;
    const auto& rec = g.edge_record(i);
    Int lo = rec.origin == w ? checked_mul(rec.label_origin, factor) : rec.label_origin;
    Int lt = rec.terminus == w ? checked_mul(rec.label_terminus, factor)
                               : rec.label_terminus;
    new_edge[i] = h.add_edge(rec.name, renum(rec.origin), renum(rec.terminus), lo, lt)
                      .unoriented();
  }
  h.set_basepoint(renum(g.basepoint()));

  AllowedFamily fam;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (i == w.index) continue;
    std::vector<Int> s = a.at(VertexId{i});
    if (i == v.index) {
      for (Int k : a.at(w)) s.push_back(checked_mul(k, abs_int(g.label(eps))));
    }
    fam.push_back(s);
  }
  r.allowed = std::move(fam);

  GraphMap fwd;
  for (int i = 0; i < g.vertex_count(); ++i) {
    VertexId x{i};
    fwd.vertex_target.push_back(renum(x));
    fwd.vertex_image.push_back(vertex_power(renum(x), x == w ? factor : 1));
  }
  for (int i = 0; i < g.edge_count(); ++i) {
    fwd.edge_image.push_back(i == eps.unoriented()
                                 ? empty_path(renum(v))
                                 : edge_letter(h, EdgeId{2 * new_edge[i]}));
  }
  fwd.prefix = empty_path(h.basepoint());

  GraphMap bwd;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (i == w.index) continue;
    bwd.vertex_target.push_back(VertexId{i});
    bwd.vertex_image.push_back(vertex_power(VertexId{i}, 1));
  }
  bwd.edge_image.resize(h.edge_count());
  for (int i = 0; i < g.edge_count(); ++i) {
    if (new_edge[i] < 0) continue;
    const auto& rec = g.edge_record(i);
    Path p = edge_letter(g, EdgeId{2 * i});
    if (rec.origin == w) p = concat(g, edge_letter(g, eps), p);
    if (rec.terminus == w) p = concat(g, p, edge_letter(g, eps.reversed()));
    bwd.edge_image[new_edge[i]] = p;
  }
  bwd.prefix = g.basepoint() == w ? edge_letter(g, eps.reversed())
                                  : empty_path(g.basepoint());

  r.record.kind = MoveKind::Collapse;
  r.record.edge = g.edge_name(eps);
  r.record.forward = std::move(fwd);
  r.record.backward = std::move(bwd);
  finish(r, g);
  return r;
}

MoveResult expand(const Graph& g, const AllowedFamily& a, VertexId v, Int n,
                  const std::vector<LinkElement>& subset) {
  if (n < 1) throw DomainError("expansion index must be positive");
  Link link = link_of(g, v);
  std::vector<char> in(link.elements.size(), 0);
  for (const auto& x : subset) {
    auto it = std::find(link.elements.begin(), link.elements.end(), x);
    if (it == link.elements.end()) {
      throw DomainError("expansion subset is not in the link of " +
                        g.vertex_name(v));
    }
    in[it - link.elements.begin()] = 1;
  }
  int count = static_cast<int>(std::count(in.begin(), in.end(), 1));
  if (count == 0 || count == static_cast<int>(in.size())) {
    throw DomainError("expansion subset must be nonempty and proper");
  }
  for (int x = 0; x < static_cast<int>(in.size()); ++x) {
    if (!in[x]) continue;
    if (!in[link.shifted(x, n)]) {
      throw DomainError("expansion subset is not invariant under a_v^n");
    }
    for (Int k = 1; k < n; ++k) {
      if (in[link.shifted(x, k)]) {
        throw DomainError("expansion subset meets its own translate");
      }
    }
  }
  // c(e): the coset in [0, n) of each moved oriented edge
  std::vector<Int> offset(2 * g.edge_count(), -1);
  for (int x = 0; x < static_cast<int>(in.size()); ++x) {
    if (!in[x]) continue;
    const auto& le = link.elements[x];
    if (abs_int(g.label(le.edge)) % n != 0) {
      throw DomainError("expansion index does not divide label of " +
                        g.edge_name(le.edge));
    }
    Int& c = offset[le.edge.index];
    if (c < 0 || le.coset < c) c = le.coset;
  }

  MoveResult r;
  Graph& h = r.graph;
  for (int i = 0; i < g.vertex_count(); ++i) h.add_vertex(g.vertex_name(VertexId{i}));
  Graph names = g;
  std::string wname = names.fresh_name(g.vertex_name(v));
  names.add_vertex(wname);
  std::string ename = names.fresh_name(g.vertex_name(v));
  VertexId w = h.add_vertex(wname);
  for (int i = 0; i < g.edge_count(); ++i) {
    auto rec = g.edge_record(i);
    if (offset[2 * i] >= 0) {
      rec.origin = w;
      rec.label_origin /= n;
    }
    if (offset[2 * i + 1] >= 0) {
      rec.terminus = w;
      rec.label_terminus /= n;
    }
    h.add_edge(rec.name, rec.origin, rec.terminus, rec.label_origin,
               rec.label_terminus);
  }
  EdgeId eps = h.add_edge(ename, v, w, n, 1);
  h.set_basepoint(g.basepoint());

  r.allowed = a;
  {
    std::vector<Int> s;
    for (Int i : a.at(v)) s.push_back(i / gcd(i, n));
    r.allowed.push_back(s);
  }

  GraphMap fwd = identity_map(g);
  for (int i = 0; i < g.edge_count(); ++i) {
    Path p = edge_letter(h, EdgeId{2 * i});
    if (offset[2 * i] >= 0) {
      p = concat(h, concat(h, vertex_power(v, -offset[2 * i]), edge_letter(h, eps)),
                 p);
    }
    if (offset[2 * i + 1] >= 0) {
      p = concat(h, concat(h, p, edge_letter(h, eps.reversed())),
                 vertex_power(v, offset[2 * i + 1]));
    }
    fwd.edge_image[i] = p;
  }
  fwd.prefix = empty_path(h.basepoint());

  GraphMap bwd;
  for (int i = 0; i < g.vertex_count(); ++i) {
    bwd.vertex_target.push_back(VertexId{i});
    bwd.vertex_image.push_back(vertex_power(VertexId{i}, 1));
  }
  bwd.vertex_target.push_back(v);
  bwd.vertex_image.push_back(vertex_power(v, n));
  for (int i = 0; i < g.edge_count(); ++i) {
    Path p = edge_letter(g, EdgeId{2 * i});
    if (offset[2 * i] >= 0) p = concat(g, vertex_power(v, offset[2 * i]), p);
    if (offset[2 * i + 1] >= 0) {
      p = concat(g, p, vertex_power(v, -offset[2 * i + 1]));
    }
    bwd.edge_image.push_back(p);
  }
  bwd.edge_image.push_back(empty_path(v));
  bwd.prefix = empty_path(g.basepoint());

  r.record.kind = MoveKind::Expand;
  r.record.vertex = g.vertex_name(v);
  r.record.index = n;
  for (int x = 0; x < static_cast<int>(in.size()); ++x) {
    if (in[x]) r.record.subset.push_back(format_link_element(g, link.elements[x]));
  }
  r.record.forward = std::move(fwd);
  r.record.backward = std::move(bwd);
  finish(r, g);
  return r;
}

namespace {

bool edge_name_less(const Graph& g, EdgeId x, EdgeId y) {
  if (g.base_name(x) != g.base_name(y)) return g.base_name(x) < g.base_name(y);
  return x.is_reversed() < y.is_reversed();
}

template <class Pred>
MoveSequence collapse_while(const Graph& g, const AllowedFamily& a, Pred pick) {
  MoveSequence s{g, a, {}};
  for (;;) {
    std::optional<EdgeId> best;
    for (int k = 0; k < 2 * s.graph.edge_count(); ++k) {
      EdgeId e{k};
      if (!pick(s.graph, e)) continue;
      if (!best || edge_name_less(s.graph, e, *best)) best = e;
    }
    if (!best) return s;
    auto r = collapse_edge(s.graph, s.allowed, *best);
    s.graph = std::move(r.graph);
    s.allowed = std::move(r.allowed);
    s.moves.push_back(std::move(r.record));
  }
}

}  // namespace

MoveSequence reduce_graph(const Graph& g, const AllowedFamily& a) {
  return collapse_while(g, a, [](const Graph& h, EdgeId e) {
    return is_collapsible(h, e);
  });
}

MoveSequence minimalize(const Graph& g, const AllowedFamily& a) {
  return collapse_while(g, a, [](const Graph& h, EdgeId e) {
    return is_collapsible(h, e) && h.valence(h.terminus(e)) == 1;
  });
}

}  // namespace gbs
