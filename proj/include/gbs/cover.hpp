#pragma once

#include <vector>

#include "gbs/graph.hpp"

namespace gbs {

/// Vertex of the Bass-Serre tree, named by a normal-form path from the
/// basepoint with trailing power 0.
struct CoverVertex {
  Path path;
  VertexId vertex;
  bool operator==(const CoverVertex&) const = default;
};

CoverVertex cover_vertex(const Graph& g, const Path& from_basepoint);
bool same_cover_vertex(const Graph& g, const CoverVertex& a,
                       const CoverVertex& b);

/// Edge a^coset t_edge leaving a cover vertex, 0 <= coset < |λ(edge)|.
struct LinkElement {
  EdgeId edge;
  Int coset = 0;
  auto operator<=>(const LinkElement&) const = default;
};

struct Link {
  VertexId vertex;
  std::vector<LinkElement> elements;  // ordered by (edge name, orientation, coset)
  std::vector<int> action;            // generator of G_v: (e,k) -> (e,k+1)

  int index_of(const LinkElement& x) const;
  /// Index of the element shifted by `by` under the vertex group.
  int shifted(int index, Int by) const;
  /// lcm of incident |labels|: order of the action.
  Int period() const;
};

Link link_of(const Graph& g, VertexId v);

struct Turn {
  VertexId vertex;
  LinkElement first;   // back along the axis
  LinkElement second;  // forward along the axis
  bool operator==(const Turn&) const = default;
};

struct AxisDomain {
  CoverVertex base;  // cover vertex where the core starts
  Path core;         // cyclically reduced core of the element
  Path square;       // normal form of core·core, 2L edge letters
  std::vector<Turn> turns;  // one per interior vertex of the square's lift
};

/// DomainError for elliptic elements.
AxisDomain axis_fundamental_domain(const Graph& g, const Path& loop);

}  // namespace gbs
