#include <algorithm>

#include "gbs/moves.hpp"
#include "gbs/words.hpp"

namespace gbs {

namespace {

Int abs_int(Int x) { return x < 0 ? -x : x; }

std::vector<LinkElement> elements_of(const Link& link, const std::vector<int>& idx) {
  std::vector<LinkElement> out;
  for (int x : idx) out.push_back(link.elements[x]);
  return out;
}

std::vector<int> orbit_union(const Link& link, const std::vector<int>& s, Int step) {
  std::vector<int> out;
  for (Int j = 0; j < link.period(); j += step) {
    for (int x : s) out.push_back(link.shifted(x, j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> shift_all(const Link& link, const std::vector<int>& s, Int by) {
  std::vector<int> out;
  for (int x : s) out.push_back(link.shifted(x, by));
  std::sort(out.begin(), out.end());
  return out;
}

// Chains primitive moves into one composite record.
MoveResult chain(const Graph& g, std::vector<MoveResult> steps) {
  MoveResult r;
  r.graph = steps.back().graph;
  r.allowed = steps.back().allowed;
  r.record.before = steps.front().record.before;
  r.record.after = steps.back().record.after;
  GraphMap fwd = steps.front().record.forward;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    fwd = compose(*steps[i].record.before, *steps[i].record.after, fwd,
                  steps[i].record.forward);
  }
  GraphMap bwd = steps.back().record.backward;
  for (std::size_t i = steps.size() - 1; i-- > 0;) {
    bwd = compose(*steps[i].record.after, *steps[i].record.before, bwd,
                  steps[i].record.backward);
  }
  r.record.forward = std::move(fwd);
  r.record.backward = std::move(bwd);
  for (auto& s : steps) r.record.steps.push_back(std::move(s.record));
  (void)g;
  return r;
}

}  // namespace

MoveResult unfold_type_c(const Graph& g, const AllowedFamily& a, EdgeId e, Int q) {
  if (g.is_loop(e) || abs_int(g.label(e.reversed())) != 1 || q < 2) {
    throw DomainError("no type C unfolding on " + g.edge_name(e));
  }
  VertexId w = g.terminus(e);
  std::vector<LinkElement> subset;
  for (EdgeId f : g.outgoing(w)) {
    if (f == e.reversed()) continue;
    if (g.label(f) % q != 0) {
      throw DomainError("type C factor does not divide label of " + g.edge_name(f));
    }
    for (Int k = 0; k < abs_int(g.label(f)); k += q) subset.push_back({f, k});
  }
  std::vector<MoveResult> steps;
  steps.push_back(expand(g, a, w, q, subset));
  steps.push_back(collapse_edge(steps[0].graph, steps[0].allowed, e));
  MoveResult r = chain(g, std::move(steps));
  r.record.kind = MoveKind::Unfold;
  r.record.vertex = g.vertex_name(w);
  r.record.unfold_case = 2;
  r.record.subtype = 'C';
  return r;
}

MoveResult unfold_step(const Graph& g, const AllowedFamily& a,
                       const std::vector<Path>& collection,
                       const AdmissibleCut& cut) {
  for (int k = 0; k < g.edge_count(); ++k) {
    if (g.is_loop(EdgeId{2 * k})) {
      throw DomainError("unfold_step needs a graph without loop edges");
    }
  }
  const VertexId v = cut.vertex;
  WhiteheadGraph wh = whitehead_graph(g, collection, v);
  auto fresh = find_admissible_cut(wh, a);
  if (!fresh || !(*fresh == cut)) throw DomainError("stale admissible cut");
  const Link& link = wh.link;

  std::vector<MoveResult> steps;
  int unfold_case = 0;
  char subtype = 0;
  int edge_delta = 1;
  if (cut.kind == AdmissibleCut::Kind::Component) {
    unfold_case = 1;
    steps.push_back(expand(g, a, v, cut.stabilizer_index,
                           elements_of(link, cut.component)));
  } else {
    int p = cut.point;
    std::vector<int> side = cut.side;
    Int c0 = link.elements[p].coset;
    if (c0 != 0) {
      p = link.shifted(p, -c0);
      side = shift_all(link, side, -c0);
    }
    const EdgeId e = link.elements[p].edge;
    const Int m = abs_int(g.label(e));
    if (m == 1) {
      unfold_case = 2;
      std::vector<int> orbit = orbit_union(link, side, 1);
      std::vector<int> rest;
      for (int x = 0; x < wh.size(); ++x) {
        if (x != p) rest.push_back(x);
      }
      if (orbit != rest) {
        subtype = 'A';
        steps.push_back(expand(g, a, v, 1, elements_of(link, orbit)));
        const Graph& g1 = steps[0].graph;
        EdgeId eps_a{2 * (g1.edge_count() - 1)};
        std::vector<LinkElement> b;
        for (const auto& x : link_of(g1, v).elements) {
          if (x.edge != e && x.edge != eps_a) b.push_back(x);
        }
        steps.push_back(expand(g1, steps[0].allowed, v, 1, b));
      } else {
        subtype = 'C';
        edge_delta = 0;
        Int n = 1;
        while (shift_all(link, side, n) != side) ++n;
        steps.push_back(expand(g, a, v, n, elements_of(link, side)));
      }
    } else {
      unfold_case = 3;
      std::vector<int> s1 = orbit_union(link, side, m);
      s1.push_back(p);
      std::sort(s1.begin(), s1.end());
      steps.push_back(expand(g, a, v, m, elements_of(link, s1)));
      const Graph& g1 = steps[0].graph;
      VertexId w1{g1.vertex_count() - 1};
      EdgeId eps1{2 * (g1.edge_count() - 1)};
      std::vector<LinkElement> moved;
      for (const auto& x : link_of(g1, w1).elements) {
        if (x.edge != e && x.edge != eps1.reversed()) moved.push_back(x);
      }
      steps.push_back(expand(g1, steps[0].allowed, w1, 1, moved));
    }
    const auto& last = steps.back();
    steps.push_back(collapse_edge(last.graph, last.allowed, e.reversed()));
  }

  MoveResult r = chain(g, std::move(steps));
  r.record.kind = MoveKind::Unfold;
  r.record.vertex = g.vertex_name(v);
  r.record.unfold_case = unfold_case;
  r.record.subtype = subtype;

  if (r.graph.edge_count() != g.edge_count() + edge_delta) {
    throw InternalError("unfold changed the edge count unexpectedly");
  }
  for (int k = 0; k < r.graph.edge_count(); ++k) {
    if (r.graph.is_loop(EdgeId{2 * k})) {
      throw InternalError("unfold created a loop edge");
    }
  }
  if (!family_contains_edge_groups(r.graph, r.allowed)) {
    throw InternalError("unfold created a non-allowed edge group");
  }
  for (const auto& x : collection) {
    if (translation_length(r.graph, r.record.push(x)) != translation_length(g, x)) {
      throw InternalError("unfold changed a translation length");
    }
  }
  return r;
}

MoveResult fold_edges(const Graph& g, const AllowedFamily& a, FoldType type,
                      EdgeId e1, EdgeId e2, Int q) {
  (void)a;
  if (g.is_loop(e1) || abs_int(g.label(e1.reversed())) != 1) {
    throw DomainError("fold: " + g.edge_name(e1) + " must be a non-loop with unit far label");
  }
  const VertexId v = g.origin(e1);
  const VertexId v1 = g.terminus(e1);
  VertexId v2 = v1;       // vertex merged away (A, B)
  VertexId keep = v1;     // surviving image of v1
  Int f1 = 1, f2 = 1;     // exponent of a_{v1}, a_{v2} images
  EdgeId dropped{-1};     // unoriented edge removed
  Int new_lo = g.label(e1);
  Int new_lt = g.label(e1.reversed());
  switch (type) {
    case FoldType::A: {
      if (g.origin(e2) != v || g.is_loop(e2) || e1.unoriented() == e2.unoriented() ||
          abs_int(g.label(e2.reversed())) != 1 || g.terminus(e2) == v1) {
        throw DomainError("fold: edges are not in type A position");
      }
      v2 = g.terminus(e2);
      Int gg = gcd(g.label(e1), g.label(e2));
      f1 = g.label(e1) * g.label(e1.reversed()) / gg;
      f2 = g.label(e2) * g.label(e2.reversed()) / gg;
      new_lo = gg;
      new_lt = 1;
      dropped = e2;
      break;
    }
    case FoldType::B: {
      if (g.origin(e2) != v || g.is_loop(e2) || e1.unoriented() == e2.unoriented() ||
          g.terminus(e2) == v1 || g.label(e1) % g.label(e2) != 0) {
        throw DomainError("fold: edges are not in type B position");
      }
      // v1 merges into t(e2); e1 disappears
      v2 = v1;
      keep = g.terminus(e2);
      f1 = g.label(e2.reversed()) * g.label(e1) * g.label(e1.reversed()) /
           g.label(e2);
      dropped = e1;
      break;
    }
    case FoldType::C: {
      if (q < 1 || g.label(e1) % q != 0) {
        throw DomainError("fold: type C factor must divide the label");
      }
      f1 = q;
      new_lo = g.label(e1) / q;
      break;
    }
  }

  auto image_vertex = [&](VertexId x) { return x == v2 ? keep : x; };
  auto renum = [&](VertexId x) {
    x = image_vertex(x);
    if (type == FoldType::C) return x;
    return VertexId{x.index > v2.index ? x.index - 1 : x.index};
  };
  auto factor_at = [&](VertexId x) -> Int {
    if (type == FoldType::B) return x == v1 ? f1 : 1;
    if (x == v1) return f1;
    if (type == FoldType::A && x == v2) return f2;
    return 1;
  };

  MoveResult r;
  Graph& h = r.graph;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (type != FoldType::C && i == v2.index) continue;
    h.add_vertex(g.vertex_name(VertexId{i}));
  }
  std::vector<int> new_edge(g.edge_count(), -1);
  for (int i = 0; i < g.edge_count(); ++i) {
    if (type != FoldType::C && i == dropped.unoriented()) continue;
    auto rec = g.edge_record(i);
    if (i == e1.unoriented() && type != FoldType::B) {
      Int lo = e1.is_reversed() ? new_lt : new_lo;
      Int lt = e1.is_reversed() ? new_lo : new_lt;
      rec.label_origin = lo;
      rec.label_terminus = lt;
    } else {
      rec.label_origin = checked_mul(rec.label_origin, factor_at(rec.origin));
      rec.label_terminus = checked_mul(rec.label_terminus, factor_at(rec.terminus));
    }
    new_edge[i] = h.add_edge(rec.name, renum(rec.origin), renum(rec.terminus),
                             rec.label_origin, rec.label_terminus)
                      .unoriented();
  }
  h.set_basepoint(renum(g.basepoint()));
  r.allowed = AllowedFamily(h.vertex_count());  // not tracked for folds

  GraphMap fwd;
  for (int i = 0; i < g.vertex_count(); ++i) {
    VertexId x{i};
    fwd.vertex_target.push_back(renum(x));
    fwd.vertex_image.push_back(vertex_power(renum(x), factor_at(x)));
  }
  auto oriented_image = [&](EdgeId e) {
    return edge_letter(h, EdgeId{2 * new_edge[e.unoriented()] +
                                 (e.is_reversed() ? 1 : 0)});
  };
  for (int i = 0; i < g.edge_count(); ++i) {
    EdgeId fe{2 * i};
    if (new_edge[i] >= 0) {
      fwd.edge_image.push_back(oriented_image(fe));
      continue;
    }
    // the dropped edge goes onto its partner, orientation matched at v
    EdgeId partner = type == FoldType::A ? e1 : e2;
    EdgeId dropped_oriented = type == FoldType::A ? e2 : e1;
    Path img = oriented_image(partner);
    fwd.edge_image.push_back(dropped_oriented.is_reversed() ? invert(h, img) : img);
  }
  fwd.prefix = empty_path(h.basepoint());

  r.record.kind = MoveKind::Fold;
  r.record.subtype = type == FoldType::A ? 'A' : type == FoldType::B ? 'B' : 'C';
  r.record.edge = g.edge_name(e1);
  if (type != FoldType::C) r.record.edge2 = g.edge_name(e2);
  r.record.index = q;
  r.record.forward = std::move(fwd);
  r.record.before = std::make_shared<const Graph>(g);
  Graph after = h;
  r.record.after = std::make_shared<const Graph>(after);
  r.graph.set_marking(push_marking(r.record, g.marking()));
  return r;
}

}  // namespace gbs
