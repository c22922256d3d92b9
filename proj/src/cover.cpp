#include "gbs/cover.hpp"

#include <algorithm>

#include "gbs/words.hpp"

namespace gbs {

CoverVertex cover_vertex(const Graph& g, const Path& from_basepoint) {
  Path p = reduce_path(g, from_basepoint);
  p.powers.back() = 0;
  return {p, g.end_of(p)};
}

bool same_cover_vertex(const Graph& g, const CoverVertex& a,
                       const CoverVertex& b) {
  if (a.vertex != b.vertex || a.path.start != b.path.start) return false;
  Path r = reduce_path(g, concat(g, invert(g, a.path), b.path));
  return r.edges.empty();
}

int Link::index_of(const LinkElement& x) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  if (it == elements.end()) throw InternalError("link element not found");
  return static_cast<int>(it - elements.begin());
}

int Link::shifted(int index, Int by) const {
  // elements of one edge are contiguous, cosets in order
  const LinkElement& x = elements.at(index);
  int first = index - static_cast<int>(x.coset);
  int count = 0;
  while (first + count < static_cast<int>(elements.size()) &&
         elements[first + count].edge == x.edge) {
    ++count;
  }
  return first + static_cast<int>(floor_mod(x.coset + by, count));
}

Int Link::period() const {
  // the last coset of each edge block is |λ|-1
  Int p = 1;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i + 1 == elements.size() || elements[i + 1].edge != elements[i].edge) {
      p = lcm(p, elements[i].coset + 1);
    }
  }
  return p;
}

Link link_of(const Graph& g, VertexId v) {
  Link link;
  link.vertex = v;
  for (EdgeId e : g.outgoing(v)) {
    Int l = g.label(e);
    Int n = l < 0 ? -l : l;
    int first = static_cast<int>(link.elements.size());
    for (Int k = 0; k < n; ++k) {
      link.elements.push_back({e, k});
      link.action.push_back(first + static_cast<int>((k + 1) % n));
    }
  }
  return link;
}

AxisDomain axis_fundamental_domain(const Graph& g, const Path& loop) {
  auto cr = cyclically_reduce(g, loop);
  if (cr.core.edges.empty()) {
    throw DomainError("elliptic element has no axis");
  }
  AxisDomain d;
  d.core = cr.core;
  // base: cover vertex reached from the basepoint by conjugator^-1
  d.base = cover_vertex(g, invert(g, cr.conjugator));
  d.square = reduce_path(g, concat(g, cr.core, cr.core));
  const auto n = d.square.edges.size();
  if (n != 2 * cr.core.edges.size()) {
    throw InternalError("core square is not reduced");
  }
  for (std::size_t i = 1; i < n; ++i) {
    EdgeId in = d.square.edges[i - 1];
    EdgeId out = d.square.edges[i];
    Turn t{g.terminus(in), {in.reversed(), 0}, {out, to_int(d.square.powers[i])}};
    if (t.first == t.second) throw InternalError("degenerate turn on axis");
    d.turns.push_back(t);
  }
  return d;
}

}  // namespace gbs
