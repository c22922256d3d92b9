#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbs/types.hpp"

namespace gbs {

// A path in the graph of groups: a_0 t_{e_1} a_1 ... t_{e_n} a_n, with a_i a
// power of the generator of the vertex group at the i-th vertex visited.
struct Path {
  VertexId start;
  std::vector<Power> powers{0};  // always edges.size() + 1 entries
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool operator==(const Path&) const = default;
};

struct GeneratorWord {
  std::string name;
  Path word;
  bool operator==(const GeneratorWord&) const = default;
};

struct EdgeRecord {
  std::string name;
  VertexId origin;
  VertexId terminus;
  Int label_origin = 1;
  Int label_terminus = 1;
};

/// Labelled graph of infinite cyclic groups with a basepoint and an optional
/// marking (named loops at the basepoint). Labels live on oriented edges at
/// their origin; λ(e) and λ(~e) are stored independently, signs included.
class Graph {
 public:
  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, VertexId origin, VertexId terminus,
                  Int label_origin, Int label_terminus);
  void set_basepoint(VertexId v) { basepoint_ = v; }
  void set_marking(std::vector<GeneratorWord> marking) {
    marking_ = std::move(marking);
  }

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(VertexId v) const {
    return vertex_names_.at(v.index);
  }
  const EdgeRecord& edge_record(int unoriented) const {
    return edges_.at(unoriented);
  }
  const std::string& base_name(EdgeId e) const {
    return edges_.at(e.unoriented()).name;
  }
  std::string edge_name(EdgeId e) const;  // `e` or `~e`

  VertexId origin(EdgeId e) const;
  VertexId terminus(EdgeId e) const { return origin(e.reversed()); }
  Int label(EdgeId e) const;
  bool is_loop(EdgeId e) const { return origin(e) == terminus(e); }

  /// Oriented edges with origin v, ordered by (name, orientation).
  std::vector<EdgeId> outgoing(VertexId v) const;
  std::vector<VertexId> vertices_by_name() const;
  /// Forward orientation of every unoriented edge, ordered by name.
  std::vector<EdgeId> edges_by_name() const;
  int valence(VertexId v) const {
    return static_cast<int>(outgoing(v).size());
  }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  bool has_name(std::string_view name) const;
  /// First unused name of the form `<base>_x<k>`, k = 1, 2, ...
  std::string fresh_name(std::string_view base) const;

  VertexId basepoint() const { return basepoint_; }
  const std::vector<GeneratorWord>& marking() const { return marking_; }

  /// End vertex of a path; throws ParseError if the path is not consistent.
  VertexId end_of(const Path& p) const;
  bool is_valid_path(const Path& p) const;

  bool is_connected() const;
  /// Throws ParseError describing the first violated invariant.
  void validate() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<EdgeRecord> edges_;
  VertexId basepoint_{0};
  std::vector<GeneratorWord> marking_;
};

/// Per-vertex index sets I_v describing the allowed edge groups: a subgroup of
/// G_v is allowed iff its index is a multiple of some element of I_v.
class AllowedFamily {
 public:
  AllowedFamily() = default;
  explicit AllowedFamily(int vertex_count)
      : sets_(static_cast<std::size_t>(vertex_count), std::vector<Int>{1}) {}

  void set(VertexId v, std::vector<Int> indices);
  const std::vector<Int>& at(VertexId v) const { return sets_.at(v.index); }
  int size() const { return static_cast<int>(sets_.size()); }
  void push_back(std::vector<Int> indices);

  bool admits_index(VertexId v, Int index) const;
  bool operator==(const AllowedFamily&) const = default;

 private:
  std::vector<std::vector<Int>> sets_;
};

/// Sorted, positive, with no element a multiple of another.
std::vector<Int> normalize_index_set(std::vector<Int> indices);

struct GraphDocument {
  Graph graph;
  AllowedFamily allowed;
};

// `gbs v1` text format.
GraphDocument parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g, const AllowedFamily& a);

// Word text format: `v^2 e ~f`.
Path parse_word(const Graph& g, std::string_view text);
Path parse_word(const Graph& g, std::string_view text, VertexId empty_start);
std::string format_word(const Graph& g, const Path& p);

/// Replaces every loop edge by a path of two edges through a new valence-2
/// vertex whose group is the old edge group. Marking words are rewritten.
Graph subdivide_loops(const Graph& g);
/// Same, also extending the allowed family to the new vertices.
GraphDocument subdivide_loops(const Graph& g, const AllowedFamily& a);

int betti_number(const Graph& g);

enum class ElementaryKind { Z, Z2, KleinBottle, SolvableBS, NonElementary };

struct Classification {
  ElementaryKind kind = ElementaryKind::NonElementary;
  Int bs_parameter = 0;  // n for BS(1,n)
  bool operator==(const Classification&) const = default;
};

/// Classified on the fully reduced graph.
Classification classify_elementary(const Graph& g);
std::string to_string(const Classification& c);

/// I_v = |labels at v|, normalized. Requires a reduced graph.
AllowedFamily amin_sets(const Graph& g);

bool is_reduced(const Graph& g);
bool is_collapsible(const Graph& g, EdgeId e);  // absorbs terminus(e)

/// Does every edge group of g belong to the family a?
bool family_contains_edge_groups(const Graph& g, const AllowedFamily& a);

}  // namespace gbs
