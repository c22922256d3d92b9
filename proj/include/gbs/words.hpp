#pragma once

#include <vector>

#include "gbs/graph.hpp"

namespace gbs {

Path empty_path(VertexId v);
Path vertex_power(VertexId v, Power k);
Path edge_letter(const Graph& g, EdgeId e);

/// Inverse path (end vertex becomes start).
Path invert(const Graph& g, const Path& p);
/// Syllable concatenation; throws ParseError if end(a) != start(b).
Path concat(const Graph& g, const Path& a, const Path& b);
/// p^n for a loop p; n may be negative. Not reduced.
Path power(const Graph& g, const Path& p, Int n);

/// Normal form: reduced, and every power standing left of an edge letter e
/// lies in [0, |λ(e)|). The trailing power is unconstrained.
Path reduce_path(const Graph& g, const Path& p);
bool is_reduced_path(const Graph& g, const Path& p);

struct CyclicReduction {
  Path core;        // cyclically reduced loop
  Path conjugator;  // path from core's vertex to the original basepoint
};

/// [w] = [conjugator^-1 · core · conjugator].
CyclicReduction cyclically_reduce(const Graph& g, const Path& loop);

Int translation_length(const Graph& g, const Path& loop);
bool is_loxodromic(const Graph& g, const Path& loop);

/// Same endpoints required; DomainError otherwise.
bool elements_equal(const Graph& g, const Path& a, const Path& b);

/// Loop at start(alpha) to loop at end(alpha): reduce(~alpha · w · alpha).
Path change_basepoint(const Graph& g, const Path& alpha, const Path& w);

/// Powers-zero path along a spanning tree, from `from` to `to`.
Path tree_path(const Graph& g, VertexId from, VertexId to);

}  // namespace gbs
