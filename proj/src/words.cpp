#include "gbs/words.hpp"

#include <algorithm>
#include <queue>

namespace gbs {

Path empty_path(VertexId v) {
  Path p;
  p.start = v;
  return p;
}

Path vertex_power(VertexId v, Power k) {
  Path p;
  p.start = v;
  p.powers[0] = std::move(k);
  return p;
}

Path edge_letter(const Graph& g, EdgeId e) {
  Path p;
  p.start = g.origin(e);
  p.edges.push_back(e);
  p.powers.push_back(0);
  return p;
}

Path invert(const Graph& g, const Path& p) {
  Path out;
  out.start = g.end_of(p);
  out.powers.clear();
  for (auto it = p.powers.rbegin(); it != p.powers.rend(); ++it) {
    out.powers.push_back(-*it);
  }
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) {
    out.edges.push_back(it->reversed());
  }
  return out;
}

Path concat(const Graph& g, const Path& a, const Path& b) {
  if (g.end_of(a) != b.start) {
    throw ParseError("invalid path: concatenation endpoints differ");
  }
  Path out = a;
  out.powers.back() += b.powers[0];
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  out.powers.insert(out.powers.end(), b.powers.begin() + 1, b.powers.end());
  return out;
}

Path power(const Graph& g, const Path& p, Int n) {
  if (g.end_of(p) != p.start) throw DomainError("power of a non-loop");
  if (p.edges.empty()) return vertex_power(p.start, p.powers[0] * n);
  Path base = n < 0 ? invert(g, p) : p;
  Int count = n < 0 ? -n : n;
  Path out = empty_path(p.start);
  for (Int i = 0; i < count; ++i) out = concat(g, out, base);
  return out;
}

namespace {

// Stack-based normal form. `out` holds a reduced, normalized prefix whose
// trailing power is still unnormalized.
void push_edge(const Graph& g, Path& out, EdgeId e) {
  Power m = out.powers.back();
  if (!out.edges.empty() && out.edges.back() == e.reversed()) {
    EdgeId f = out.edges.back();
    Int div = g.label(f.reversed());
    if (m % div == 0) {
      // t_f a^m t_~f -> a^{(m / λ(~f)) λ(f)} at origin(f)
      out.edges.pop_back();
      out.powers.pop_back();
      out.powers.back() += (m / div) * g.label(f);
      return;
    }
  }
  Int lab = g.label(e);
  Int mod = lab < 0 ? -lab : lab;
  Int r = floor_mod(m, mod);
  Power k = (m - r) / lab;
  out.powers.back() = r;
  out.edges.push_back(e);
  out.powers.push_back(k * g.label(e.reversed()));
}

}  // namespace

Path reduce_path(const Graph& g, const Path& p) {
  g.end_of(p);  // validates
  Path out = empty_path(p.start);
  out.powers[0] = p.powers[0];
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    push_edge(g, out, p.edges[i]);
    out.powers.back() += p.powers[i + 1];
  }
  return out;
}

bool is_reduced_path(const Graph& g, const Path& p) {
  return reduce_path(g, p) == p;
}

CyclicReduction cyclically_reduce(const Graph& g, const Path& loop) {
  Path w = reduce_path(g, loop);
  if (g.end_of(w) != w.start) throw DomainError("word is not a loop");
  Path total = empty_path(w.start);  // B = β_1 β_2 ... with core = B^-1 w B
  for (;;) {
    std::size_t n = w.edges.size();
    if (n == 0) break;
    EdgeId first = w.edges.front();
    EdgeId last = w.edges.back();
    if (first != last.reversed()) break;
    Power joint = w.powers.back() + w.powers.front();
    if (joint % g.label(first) != 0) break;
    Path beta = vertex_power(w.start, w.powers.front());
    beta = concat(g, beta, edge_letter(g, first));
    w = reduce_path(g, concat(g, concat(g, invert(g, beta), w), beta));
    total = concat(g, total, beta);
  }
  return {w, reduce_path(g, invert(g, total))};
}

Int translation_length(const Graph& g, const Path& loop) {
  return static_cast<Int>(cyclically_reduce(g, loop).core.edges.size());
}

bool is_loxodromic(const Graph& g, const Path& loop) {
  return translation_length(g, loop) > 0;
}

bool elements_equal(const Graph& g, const Path& a, const Path& b) {
  if (a.start != b.start || g.end_of(a) != g.end_of(b)) {
    throw DomainError("elements_equal: endpoints differ");
  }
  Path r = reduce_path(g, concat(g, a, invert(g, b)));
  return r.edges.empty() && r.powers[0] == 0;
}

Path change_basepoint(const Graph& g, const Path& alpha, const Path& w) {
  if (alpha.start != w.start || g.end_of(w) != w.start) {
    throw DomainError("change_basepoint: path does not start at the loop");
  }
  return reduce_path(g, concat(g, concat(g, invert(g, alpha), w), alpha));
}

Path tree_path(const Graph& g, VertexId from, VertexId to) {
  std::vector<EdgeId> via(g.vertex_count(), EdgeId{});
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<VertexId> todo;
  todo.push(from);
  seen[from.index] = 1;
  while (!todo.empty()) {
    VertexId x = todo.front();
    todo.pop();
    for (EdgeId e : g.outgoing(x)) {
      VertexId y = g.terminus(e);
      if (seen[y.index]) continue;
      seen[y.index] = 1;
      via[y.index] = e;
      todo.push(y);
    }
  }
  if (!seen[to.index]) throw DomainError("no path between vertices");
  std::vector<EdgeId> rev;
  for (VertexId x = to; x != from; x = g.origin(via[x.index])) {
    rev.push_back(via[x.index]);
  }
  Path p = empty_path(from);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    p.edges.push_back(*it);
    p.powers.push_back(0);
  }
  return p;
}

}  // namespace gbs
