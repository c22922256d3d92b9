#include "gbs/graph.hpp"
#include "gbs/moves.hpp"

namespace gbs {

Classification classify_elementary(const Graph& g) {
  const Graph r = reduce_graph(g, AllowedFamily(g.vertex_count())).graph;
  Classification c;
  if (r.vertex_count() != 1 || r.edge_count() > 1) return c;
  if (r.edge_count() == 0) {
    c.kind = ElementaryKind::Z;
    return c;
  }
  Int p = r.edge_record(0).label_origin;
  Int q = r.edge_record(0).label_terminus;
  auto unit = [](Int x) { return x == 1 || x == -1; };
  if (unit(p) && unit(q)) {
    c.kind = p == q ? ElementaryKind::Z2 : ElementaryKind::KleinBottle;
  } else if (unit(p) || unit(q)) {
    c.kind = ElementaryKind::SolvableBS;
    c.bs_parameter = unit(p) ? q : p;
  }
  return c;
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case ElementaryKind::Z:
      return "Z";
    case ElementaryKind::Z2:
      return "Z2";
    case ElementaryKind::KleinBottle:
      return "KleinBottle";
    case ElementaryKind::SolvableBS:
      return "SolvableBS(" + std::to_string(c.bs_parameter) + ")";
    case ElementaryKind::NonElementary:
      break;
  }
  return "NonElementary";
}

AllowedFamily amin_sets(const Graph& g) {
  if (!is_reduced(g)) throw DomainError("amin_sets needs a reduced graph");
  AllowedFamily a(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) {
    std::vector<Int> s;
    for (EdgeId e : g.outgoing(VertexId{i})) {
      Int l = g.label(e);
      s.push_back(l < 0 ? -l : l);
    }
    if (!s.empty()) a.set(VertexId{i}, s);
  }
  return a;
}

}  // namespace gbs
