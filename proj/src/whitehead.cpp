#include "gbs/whitehead.hpp"

#include <algorithm>
#include <sstream>

#include "gbs/words.hpp"

namespace gbs {

std::vector<std::vector<int>> WhiteheadGraph::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (auto [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  return adj;
}

namespace {

// Components of the graph restricted to vertices with keep[x] set.
std::vector<std::vector<int>> components_of(
    const std::vector<std::vector<int>>& adj, const std::vector<char>& keep) {
  int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (!keep[s] || comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int y : adj[members[i]]) {
        if (keep[y] && comp[y] < 0) {
          comp[y] = comp[s];
          members.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<int> shift_set(const Link& link, const std::vector<int>& s, Int by) {
  std::vector<int> out;
  for (int x : s) out.push_back(link.shifted(x, by));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<int>> WhiteheadGraph::components() const {
  return components_of(adjacency(), std::vector<char>(size(), 1));
}

WhiteheadGraph whitehead_graph(const Graph& g, const std::vector<Path>& collection,
                               VertexId v) {
  WhiteheadGraph w;
  w.link = link_of(g, v);
  Int period = w.link.period();
  for (const auto& x : collection) {
    auto dom = axis_fundamental_domain(g, x);
    for (const auto& t : dom.turns) {
      if (t.vertex != v) continue;
      int a = w.link.index_of(t.first);
      int b = w.link.index_of(t.second);
      for (Int j = 0; j < period; ++j) {
        int sa = w.link.shifted(a, j);
        int sb = w.link.shifted(b, j);
        w.edges.insert({std::min(sa, sb), std::max(sa, sb)});
      }
    }
  }
  return w;
}

std::vector<WhiteheadGraph> whitehead_graphs(const Graph& g,
                                             const std::vector<Path>& collection) {
  std::vector<WhiteheadGraph> out;
  for (VertexId v : g.vertices_by_name()) {
    out.push_back(whitehead_graph(g, collection, v));
  }
  return out;
}

std::optional<AdmissibleCut> find_admissible_cut(const WhiteheadGraph& w,
                                                 const AllowedFamily& a) {
  if (w.size() == 0) return std::nullopt;
  auto adj = w.adjacency();
  auto comps = components_of(adj, std::vector<char>(w.size(), 1));
  if (comps.size() >= 2) {
    for (const auto& c : comps) {
      Int j = 1;
      while (shift_set(w.link, c, j) != c) ++j;
      if (a.admits_index(w.link.vertex, j)) {
        AdmissibleCut cut;
        cut.kind = AdmissibleCut::Kind::Component;
        cut.vertex = w.link.vertex;
        cut.component = c;
        cut.stabilizer_index = j;
        return cut;
      }
    }
  }
  for (int p = 0; p < w.size(); ++p) {
    const auto* home = &comps.front();
    for (const auto& c : comps) {
      if (std::binary_search(c.begin(), c.end(), p)) home = &c;
    }
    std::vector<char> keep(w.size(), 0);
    for (int x : *home) keep[x] = 1;
    keep[p] = 0;
    auto parts = components_of(adj, keep);
    if (parts.size() < 2) continue;
    EdgeId pe = w.link.elements[p].edge;
    for (const auto& side : parts) {
      bool avoids = std::none_of(side.begin(), side.end(), [&](int x) {
        return w.link.elements[x].edge == pe;
      });
      if (avoids) {
        AdmissibleCut cut;
        cut.kind = AdmissibleCut::Kind::CutPoint;
        cut.vertex = w.link.vertex;
        cut.point = p;
        cut.side = side;
        return cut;
      }
    }
  }
  return std::nullopt;
}

bool has_isolated_link_vertex(const WhiteheadGraph& w) {
  std::vector<int> degree(w.size(), 0);
  for (auto [x, y] : w.edges) {
    ++degree[x];
    ++degree[y];
  }
  return std::find(degree.begin(), degree.end(), 0) != degree.end();
}

std::string format_link_element(const Graph& g, const LinkElement& x) {
  return g.edge_name(x.edge) + ":" + std::to_string(x.coset);
}

std::string to_dot(const Graph& g, const WhiteheadGraph& w,
                   const std::optional<AdmissibleCut>& cut) {
  std::vector<std::string> colour(w.size());
  if (cut) {
    if (cut->kind == AdmissibleCut::Kind::Component) {
      for (int x : cut->component) colour[x] = "lightblue";
    } else {
      colour[cut->point] = "red";
      for (int x : cut->side) colour[x] = "lightblue";
    }
  }
  std::ostringstream out;
  out << "graph \"wh_" << g.vertex_name(w.link.vertex) << "\" {\n";
  for (int i = 0; i < w.size(); ++i) {
    out << "  n" << i << " [label=\"" << format_link_element(g, w.link.elements[i])
        << "\"";
    if (!colour[i].empty()) {
      out << ", style=filled, fillcolor=" << colour[i];
    }
    out << "];\n";
  }
  for (auto [x, y] : w.edges) out << "  n" << x << " -- n" << y << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace gbs
