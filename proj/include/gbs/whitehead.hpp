#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gbs/cover.hpp"

namespace gbs {

/// Graph on the link of a vertex; edges are turns crossed by translates of
/// the axes of a collection. Indices refer to link.elements.
struct WhiteheadGraph {
  Link link;
  std::set<std::pair<int, int>> edges;  // first < second

  int size() const { return static_cast<int>(link.elements.size()); }
  std::vector<std::vector<int>> adjacency() const;
  /// Components in order of their least element; each sorted.
  std::vector<std::vector<int>> components() const;
};

WhiteheadGraph whitehead_graph(const Graph& g, const std::vector<Path>& collection,
                               VertexId v);

/// All Whitehead graphs in vertex-name order.
std::vector<WhiteheadGraph> whitehead_graphs(const Graph& g,
                                             const std::vector<Path>& collection);

struct AdmissibleCut {
  enum class Kind { Component, CutPoint };
  Kind kind = Kind::Component;
  VertexId vertex;
  std::vector<int> component;  // Component: the component
  Int stabilizer_index = 1;    // Component: orbit size of the component
  int point = -1;              // CutPoint: the cut point
  std::vector<int> side;       // CutPoint: a side avoiding the point's orbit
  bool operator==(const AdmissibleCut&) const = default;
};

std::optional<AdmissibleCut> find_admissible_cut(const WhiteheadGraph& w,
                                                 const AllowedFamily& a);

bool has_isolated_link_vertex(const WhiteheadGraph& w);

std::string format_link_element(const Graph& g, const LinkElement& x);

/// Undirected DOT; cut nodes are coloured when a cut is given.
std::string to_dot(const Graph& g, const WhiteheadGraph& w,
                   const std::optional<AdmissibleCut>& cut);

}  // namespace gbs
