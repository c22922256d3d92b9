#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbs/whitehead.hpp"

namespace gbs {

/// Homomorphism between Bass groups of two graphs, given on generators.
/// Loops at the source basepoint map to prefix · image · prefix^-1.
struct GraphMap {
  std::vector<VertexId> vertex_target;
  std::vector<Path> vertex_image;  // image of a_v, a loop at vertex_target[v]
  std::vector<Path> edge_image;    // per unoriented edge, image of t_e
  Path prefix;  // target basepoint -> vertex_target[source basepoint]
};

GraphMap identity_map(const Graph& g);
/// Reduced image of a path.
Path map_path(const Graph& source, const Graph& target, const GraphMap& m,
              const Path& p);
/// Reduced image of a loop at the source basepoint, as a loop at the target
/// basepoint.
Path map_loop(const Graph& source, const Graph& target, const GraphMap& m,
              const Path& loop);
/// first then second.
GraphMap compose(const Graph& middle, const Graph& target, const GraphMap& first,
                 const GraphMap& second);

enum class MoveKind { Subdivide, Collapse, Expand, Unfold, Fold };

struct MoveRecord {
  MoveKind kind = MoveKind::Collapse;
  std::string vertex;             // Expand, Unfold
  std::string edge;               // Collapse (oriented name), Fold
  std::string edge2;              // Fold
  Int index = 0;                  // Expand: subgroup index; Fold C: q
  std::vector<std::string> subset;  // Expand: `e:k` link elements
  int unfold_case = 0;            // 1, 2, 3
  char subtype = 0;               // Unfold case 2: 'A' or 'C'; Fold: A/B/C
  std::vector<MoveRecord> steps;  // primitive moves of an unfold
  std::shared_ptr<const Graph> before;
  std::shared_ptr<const Graph> after;
  GraphMap forward;   // before -> after
  GraphMap backward;  // after -> before (absent for folds)

  Path push(const Path& loop) const;  // loop in `before` to loop in `after`
  Path pull(const Path& loop) const;  // loop in `after` to loop in `before`
};

struct MoveResult {
  Graph graph;
  AllowedFamily allowed;
  MoveRecord record;
};

struct MoveSequence {
  Graph graph;
  AllowedFamily allowed;
  std::vector<MoveRecord> moves;
};

/// Rewrites the marking of g through a forward map into `target`.
std::vector<GeneratorWord> push_marking(const MoveRecord& r,
                                        const std::vector<GeneratorWord>& m);

MoveResult subdivide_move(const Graph& g, const AllowedFamily& a);

/// Collapses eps, absorbing terminus(eps) into origin(eps).
MoveResult collapse_edge(const Graph& g, const AllowedFamily& a, EdgeId eps);

/// Pulls the link elements `subset` at v onto a new vertex joined to v by an
/// edge with labels (n, 1).
MoveResult expand(const Graph& g, const AllowedFamily& a, VertexId v, Int n,
                  const std::vector<LinkElement>& subset);

/// Collapses collapsible edges until none remain, least edge name first.
MoveSequence reduce_graph(const Graph& g, const AllowedFamily& a);
/// Collapses only leaf edges whose label at the leaf is ±1.
MoveSequence minimalize(const Graph& g, const AllowedFamily& a);

/// One unfolding on an admissible cut. Preconditions: no loop edge, and cut is
/// what find_admissible_cut returns for (g, collection) at cut.vertex.
MoveResult unfold_step(const Graph& g, const AllowedFamily& a,
                       const std::vector<Path>& collection,
                       const AdmissibleCut& cut);

/// Inverse of a type C fold on e (v -> w, |λ(~e)| = 1): multiplies λ(e) by q
/// and divides the other labels at w by q. Realized as expand + collapse.
MoveResult unfold_type_c(const Graph& g, const AllowedFamily& a, EdgeId e, Int q);

enum class FoldType { A, B, C };
/// Test oracle. A: e1, e2 with common origin and |λ(~e_i)| = 1, distinct
/// termini. B: |λ(~e1)| = 1, λ(e2) | λ(e1); e1 is deleted. C: e1 alone,
/// |λ(~e1)| = 1, q | λ(e1). Only `forward` is filled in the record.
MoveResult fold_edges(const Graph& g, const AllowedFamily& a, FoldType type,
                      EdgeId e1, EdgeId e2, Int q);

Int label_product(const Graph& g);
/// Maximal paths through valence-2 vertices, each as oriented edges.
std::vector<std::vector<EdgeId>> topological_chains(const Graph& g);
Int segment_complexity(const Graph& g, const std::vector<EdgeId>& chain);

/// Isomorphism of labelled graphs up to renaming and edge orientation. Labels
/// may change sign at every end of one vertex, or at both ends of one edge;
/// neither changes the group.
bool graphs_isomorphic(const Graph& a, const Graph& b);

// Move log: one primitive per line, then `ISO <gen> = <word>` lines.
std::string serialize_moves(const std::vector<MoveRecord>& moves);
/// Replays primitive moves by name and checks ISO lines. ParseError on
/// malformed logs, DomainError if a replayed marking disagrees.
MoveSequence replay_moves(const Graph& g, const AllowedFamily& a,
                          std::string_view log);

}  // namespace gbs
