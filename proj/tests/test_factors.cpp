#include <doctest.h>

#include <functional>

#include "gbs/factors.hpp"
#include "gbs/words.hpp"
#include "support/corpus.hpp"

using namespace gbs;

namespace {

GraphDocument doc(const char* text) { return parse_graph(text); }

const char* kBS24 = "gbs v1\nvertex v\nedge e v v 2 4\nbasepoint v\n";

// Is x a product of at most `depth` letters from gens and their inverses?
bool in_span(const Graph& g, const std::vector<Path>& gens, const Path& x, int depth) {
  std::vector<Path> letters;
  for (const auto& y : gens) {
    letters.push_back(y);
    letters.push_back(invert(g, y));
  }
  std::function<bool(const Path&, int)> go = [&](const Path& acc, int left) {
    if (elements_equal(g, acc, x)) return true;
    if (left == 0) return false;
    for (const auto& l : letters) {
      if (go(reduce_path(g, concat(g, acc, l)), left - 1)) return true;
    }
    return false;
  };
  return go(empty_path(g.basepoint()), depth);
}

Path conj(const Graph& g, const Path& c, const Path& x) {
  return reduce_path(g, concat(g, concat(g, c, x), invert(g, c)));
}

}  // namespace

TEST_CASE("avoided edge orbits") {
  auto one = doc(kBS24);
  CHECK(avoided_edge_orbits(one.graph, {parse_word(one.graph, "e")}).empty());
  auto two = doc("gbs v1\nvertex v\nedge e v v 2 3\nedge f v v 1 5\nbasepoint v\n");
  auto av = avoided_edge_orbits(two.graph, {parse_word(two.graph, "e")});
  REQUIRE(av.size() == 1);
  CHECK(two.graph.edge_name(av[0]) == "f");
  // the conjugate f e ~f still avoids f: its axis is a translate of e's
  CHECK(avoided_edge_orbits(two.graph, {parse_word(two.graph, "f e ~f")}).size() == 1);
  CHECK_THROWS_AS(avoided_edge_orbits(two.graph, {parse_word(two.graph, "v")}),
                  DomainError);
}

TEST_CASE("extract_factor_system") {
  SUBCASE("nothing to carry") {
    auto d = doc("gbs v1\nvertex v\nedge e v v 2 3\nbasepoint v\n");
    auto s = extract_factor_system(d.graph, d.allowed, {*d.graph.find_edge("e")}, {});
    CHECK(s.factors.empty());
    // an axis in a component with no edges left is an error
    CHECK_THROWS(extract_factor_system(d.graph, d.allowed, {*d.graph.find_edge("e")},
                                       {parse_word(d.graph, "e")}));
  }
  SUBCASE("one loop left") {
    auto d = doc("gbs v1\nvertex v\nedge e v v 2 3\nedge f v v 1 5\nbasepoint v\n");
    Path x = parse_word(d.graph, "v e");
    auto s = extract_factor_system(d.graph, d.allowed, {*d.graph.find_edge("f")}, {x});
    REQUIRE(s.factors.size() == 1);
    CHECK(s.is_proper);
    const Factor& f = s.factors[0];
    CHECK(f.graph.edge_count() == 1);
    CHECK(f.graph.find_edge("e"));
    CHECK(f.collection_index == std::vector<int>{0});
    CHECK(translation_length(f.graph, f.collection[0]) == 1);
    // generators land in the parent as words avoiding f
    for (const auto& gen : f.embedded_generators()) {
      for (EdgeId e : reduce_path(d.graph, gen.word).edges) {
        CHECK(d.graph.base_name(e) == "e");
      }
    }
  }
  SUBCASE("amalgam edge is kept") {
    auto d = doc(
        "gbs v1\nvertex v\nvertex w\nedge h v w 2 3\nedge f v v 1 5\nbasepoint v\n");
    Path x = parse_word(d.graph, "v h w ~h");
    auto s = extract_factor_system(d.graph, d.allowed, {*d.graph.find_edge("f")}, {x});
    REQUIRE(s.factors.size() == 1);
    CHECK(s.factors[0].graph.vertex_count() == 2);
    CHECK(s.factors[0].graph.edge_count() == 1);
  }
}

TEST_CASE("check_simple basics") {
  for (Int n : {2, 3, 5}) {
    Graph g = doc(kBS24).graph;
    Graph bs;
    VertexId v = bs.add_vertex("v");
    bs.add_edge("e", v, v, 1, n);
    bs.set_basepoint(v);
    auto r = check_simple(bs, AllowedFamily(1), {parse_word(bs, "e")});
    CHECK_FALSE(r.simple);
    CHECK(r.by_classification);
    CHECK(r.classification.kind == ElementaryKind::SolvableBS);
  }
  auto d = doc(kBS24);
  CHECK_THROWS_AS(check_simple(d.graph, d.allowed, {parse_word(d.graph, "v^3")}),
                  DomainError);
  CHECK_THROWS_AS(check_simple(d.graph, d.allowed, {}), DomainError);
  AllowedFamily bad(1);
  bad.set(VertexId{0}, {3});
  CHECK_THROWS_AS(check_simple(d.graph, bad, {parse_word(d.graph, "e")}), DomainError);
}

TEST_CASE("BS(2,4) and the subgroup generated by a and tat^-1") {
  auto d = doc(kBS24);
  const Graph& g = d.graph;
  Path x = parse_word(g, "e v ~e v");
  CHECK(translation_length(g, x) == 2);
  auto r = check_simple(g, d.allowed, {x});
  REQUIRE(r.simple);
  REQUIRE(r.system.factors.size() == 1);
  CHECK(r.system.is_proper);
  const Factor& f = r.system.factors[0];
  CHECK(r.max_edges <= r.total_length + r.initial_edges + 1);

  // reduced factor: one edge with labels 2 and 4
  Graph red = reduce_graph(f.graph, f.allowed).graph;
  REQUIRE(red.edge_count() == 1);
  CHECK(red.vertex_count() == 2);
  std::vector<Int> labels{std::abs(red.label(EdgeId{0})), std::abs(red.label(EdgeId{1}))};
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<Int>{2, 4});

  // F is conjugate to H = <a, t a t^-1>: find c with c F c^-1 <= H and
  // c^-1 H c <= F, testing membership by bounded words in the generators
  std::vector<Path> fgens;
  for (const auto& gen : f.embedded_generators()) fgens.push_back(gen.word);
  std::vector<Path> hgens{parse_word(g, "v"), parse_word(g, "e v ~e")};
  bool found = false;
  for (const char* c : {"v^0", "e", "~e", "v e", "v ~e", "e v", "~e v"}) {
    Path cp = parse_word(g, c);
    bool down = std::all_of(fgens.begin(), fgens.end(), [&](const Path& y) {
      return in_span(g, hgens, conj(g, cp, y), 3);
    });
    bool up = std::all_of(hgens.begin(), hgens.end(), [&](const Path& y) {
      return in_span(g, fgens, conj(g, invert(g, cp), y), 3);
    });
    if (down && up) {
      found = true;
      MESSAGE("conjugator " << std::string(c));
      break;
    }
  }
  CHECK(found);

  // the collection element, rewritten, lies in the factor
  auto y = to_factor(x, *f.context);
  REQUIRE(y);
  // factor graphs keep loops subdivided, so the length doubles
  CHECK(translation_length(f.graph, *y) == 4);
}

TEST_CASE("complexity") {
  auto graph = [](Int p, Int q) {
    Graph g;
    VertexId v = g.add_vertex("v");
    g.add_edge("e", v, v, p, q);
    g.set_basepoint(v);
    return g;
  };
  CHECK(complexity(graph(1, -1)) == ComplexityTriple{0, 0, 0});
  CHECK(complexity(graph(1, 1)) == ComplexityTriple{0, 0, 0});
  CHECK(complexity(graph(1, 2)) == ComplexityTriple{1, 0, 0});
  CHECK(complexity(graph(2, 3)) == ComplexityTriple{1, 1, 1});
  CHECK(complexity(graph(2, 4)) == ComplexityTriple{1, 1, 2});
  CHECK(to_string(complexity(graph(2, 3))) == "(1,1,1)");
  Graph z;
  z.set_basepoint(z.add_vertex("v"));
  CHECK(complexity(z) == ComplexityTriple{0, 0, 0});
  // computed on the reduced form
  auto hidden = doc(
      "gbs v1\nvertex v\nvertex w\nedge f v w 1 1\nedge e w w 2 3\nbasepoint v\n");
  CHECK(complexity(hidden.graph) == ComplexityTriple{1, 1, 1});
  CHECK(ComplexityTriple{1, 0, 5} < ComplexityTriple{1, 1, 0});
}

TEST_CASE("minimal_factor_system") {
  SUBCASE("BS(1,2) is its own minimal system") {
    auto d = doc("gbs v1\nvertex v\nedge e v v 1 2\nbasepoint v\n");
    auto m = minimal_factor_system(d.graph, d.allowed, {parse_word(d.graph, "e")});
    CHECK_FALSE(m.system.is_proper);
    REQUIRE(m.system.factors.size() == 1);
    CHECK(m.system.factors[0].context->whole);
  }
  SUBCASE("BS(2,4) is idempotent") {
    auto d = doc(kBS24);
    auto m = minimal_factor_system(d.graph, d.allowed, {parse_word(d.graph, "e v ~e v")});
    CHECK(m.system.is_proper);
    REQUIRE(m.system.factors.size() == 1);
    const Factor& f = m.system.factors[0];
    auto again = minimal_factor_system(f);
    CHECK_FALSE(again.system.is_proper);
    REQUIRE(again.system.factors.size() == 1);
    CHECK(is_peripheral(m.system, again.system));
    CHECK(is_peripheral(again.system, m.system));
    for (const auto& s : m.simple_outputs) CHECK(is_peripheral(m.system, s));
  }
  SUBCASE("peripherality basics") {
    auto d = doc(kBS24);
    std::vector<Path> coll{parse_word(d.graph, "e v ~e v")};
    auto m = minimal_factor_system(d.graph, d.allowed, coll);
    FactorSystem whole{{whole_factor(d.graph, d.allowed, coll)}, false};
    CHECK(is_peripheral(m.system, m.system));
    CHECK(is_peripheral(m.system, whole));
    CHECK_FALSE(is_peripheral(whole, m.system));
  }
}

TEST_CASE("corpus properties") {
  int simple = 0, not_simple = 0;
  for (const auto& in : testing::random_corpus(testing::seed_from_env(61), 120)) {
    INFO(in.describe());
    auto r = check_simple(in.graph, in.allowed, in.collection);
    // lengths as measured after subdividing loops
    MoveResult sub = subdivide_move(in.graph, in.allowed);
    CHECK(r.max_edges <= r.total_length + r.initial_edges + 1);
    if (r.simple) {
      ++simple;
      CHECK(r.system.is_proper);
      CHECK_FALSE(r.system.factors.empty());
      for (const auto& f : r.system.factors) {
        Graph red = reduce_graph(f.graph, f.allowed).graph;
        CHECK_FALSE((red.vertex_count() == 1 && red.edge_count() == 0));
        CHECK(family_contains_edge_groups(f.graph, f.allowed));
        for (std::size_t k = 0; k < f.collection.size(); ++k) {
          const Path& top = in.collection[f.collection_index[k]];
          CHECK(translation_length(f.graph, f.collection[k]) ==
                translation_length(sub.graph, sub.record.push(top)));
          CHECK(to_factor(top, *f.context));
        }
      }
      // every element of the collection lands in some factor
      for (const auto& x : in.collection) {
        bool placed = std::any_of(r.system.factors.begin(), r.system.factors.end(),
                                  [&](const Factor& f) { return to_factor(x, *f.context).has_value(); });
        CHECK(placed);
      }
    } else {
      ++not_simple;
      if (!r.by_classification) {
        for (const auto& wh : whitehead_graphs(r.certificate, r.certificate_collection)) {
          CHECK_FALSE(find_admissible_cut(wh, r.certificate_allowed));
        }
      }
    }
    auto m = minimal_factor_system(in.graph, in.allowed, in.collection);
    for (const auto& e : m.recursion) CHECK(e.child < e.parent);
    CHECK(m.system.is_proper == r.simple);
  }
  CHECK(simple > 0);
  CHECK(not_simple > 0);
}

TEST_CASE("result text") {
  auto d = doc(kBS24);
  auto r = check_simple(d.graph, d.allowed, {parse_word(d.graph, "e v ~e v")});
  std::string text = serialize_result(d.graph, r);
  auto p = parse_result(text);
  CHECK(p.simple);
  REQUIRE(p.factors.size() == 1);
  CHECK(graphs_isomorphic(p.factors[0].document.graph, r.system.factors[0].graph));
  CHECK(p.factors[0].embed.size() == r.system.factors[0].embedded_generators().size());
  for (const auto& [name, word] : p.factors[0].embed) {
    CHECK_NOTHROW(parse_word(d.graph, word));
  }

  auto bs = doc("gbs v1\nvertex v\nedge e v v 1 2\nbasepoint v\n");
  auto n = check_simple(bs.graph, bs.allowed, {parse_word(bs.graph, "e")});
  auto pn = parse_result(serialize_result(bs.graph, n));
  CHECK_FALSE(pn.simple);
  REQUIRE(pn.factors.size() == 1);
  CHECK(graphs_isomorphic(pn.factors[0].document.graph, bs.graph));

  auto m = minimal_factor_system(d.graph, d.allowed, {parse_word(d.graph, "e v ~e v")});
  std::string sys = serialize_system(d.graph, m.system);
  CHECK(sys.rfind("SYSTEM proper\n", 0) == 0);
  CHECK(parse_result(sys).simple);
  CHECK_THROWS_AS(parse_result("MAYBE\n"), ParseError);
}
