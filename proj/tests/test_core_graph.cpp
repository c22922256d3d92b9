#include <doctest.h>

#include "gbs/moves.hpp"
#include "gbs/words.hpp"
#include "support/corpus.hpp"

using namespace gbs;

namespace {

const char* kBS24 =
    "gbs v1\n"
    "vertex v\n"
    "edge e v v 2 4\n"
    "basepoint v\n";

Graph loop_graph(Int p, Int q) {
  Graph g;
  VertexId v = g.add_vertex("v");
  g.add_edge("e", v, v, p, q);
  g.set_basepoint(v);
  return g;
}

// Edge and vertex data compared by name.
bool same_document(const GraphDocument& x, const GraphDocument& y) {
  const Graph& a = x.graph;
  const Graph& b = y.graph;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  if (a.vertex_name(a.basepoint()) != b.vertex_name(b.basepoint())) return false;
  for (int i = 0; i < a.vertex_count(); ++i) {
    auto w = b.find_vertex(a.vertex_name(VertexId{i}));
    if (!w || x.allowed.at(VertexId{i}) != y.allowed.at(*w)) return false;
  }
  for (int i = 0; i < a.edge_count(); ++i) {
    const auto& r = a.edge_record(i);
    auto f = b.find_edge(r.name);
    if (!f || f->is_reversed()) return false;
    const auto& s = b.edge_record(f->unoriented());
    if (a.vertex_name(r.origin) != b.vertex_name(s.origin) ||
        a.vertex_name(r.terminus) != b.vertex_name(s.terminus) ||
        r.label_origin != s.label_origin || r.label_terminus != s.label_terminus) {
      return false;
    }
  }
  if (a.marking().size() != b.marking().size()) return false;
  for (std::size_t i = 0; i < a.marking().size(); ++i) {
    if (a.marking()[i].name != b.marking()[i].name ||
        format_word(a, a.marking()[i].word) != format_word(b, b.marking()[i].word)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("edge reversal is an involution") {
  Graph g;
  VertexId v = g.add_vertex("v");
  VertexId w = g.add_vertex("w");
  EdgeId e = g.add_edge("e", v, w, 3, -2);
  CHECK(e.reversed().reversed() == e);
  CHECK(e.reversed() != e);
  CHECK(g.origin(e.reversed()) == g.terminus(e));
  CHECK(g.terminus(e.reversed()) == g.origin(e));
  CHECK(g.label(e) == 3);
  CHECK(g.label(e.reversed()) == -2);
  CHECK(g.edge_name(e.reversed()) == "~e");
}

TEST_CASE("parse the integers") {
  auto doc = parse_graph("gbs v1\nvertex v\nbasepoint v\n");
  CHECK(doc.graph.vertex_count() == 1);
  CHECK(doc.graph.edge_count() == 0);
  CHECK(doc.allowed.at(VertexId{0}) == std::vector<Int>{1});
  CHECK(classify_elementary(doc.graph).kind == ElementaryKind::Z);
}

TEST_CASE("parse BS(2,4)") {
  auto doc = parse_graph(kBS24);
  const Graph& g = doc.graph;
  REQUIRE(g.edge_count() == 1);
  EdgeId e = *g.find_edge("e");
  CHECK(g.label(e) == 2);
  CHECK(g.label(e.reversed()) == 4);
  CHECK(g.is_loop(e));
  CHECK(g.vertex_name(g.basepoint()) == "v");
}

TEST_CASE("parse errors") {
  auto fails_with = [](const char* text, const std::string& needle) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("gbs v1\nvertex v\nvertex w\nedge e v w 0 3\nbasepoint v\n",
                   "zero label"));
  CHECK(fails_with("gbs v1\nvertex v\nedge e v w 1 3\nbasepoint v\n", "line 3"));
  CHECK(fails_with("gbs v1\nvertex v\nvertex w\nbasepoint v\n", "disconnected"));
  CHECK(fails_with("gbs v1\nvertex v\n", "basepoint"));
  CHECK(fails_with("vertex v\nbasepoint v\n", "gbs v1"));
  CHECK(fails_with("gbs v1\nvertex v\nbasepoint v\nfrobnicate\n", "line 4"));
  CHECK(fails_with("gbs v1\nvertex v\nvertex v\nbasepoint v\n", "duplicate"));
  CHECK(fails_with("gbs v1\nvertex v\nbasepoint v\nallowed v 0\n", "positive"));
  CHECK(fails_with("gbs v1\nvertex v\nedge e v v 1 x\nbasepoint v\n", "integers"));
}

TEST_CASE("comments and allowed lines") {
  auto doc = parse_graph(
      "gbs v1  # header\n"
      "# a comment line\n"
      "vertex v\n"
      "edge e v v 2 3\n"
      "allowed v 6 2 4\n"
      "basepoint v\n");
  CHECK(doc.allowed.at(VertexId{0}) == std::vector<Int>{2});
  CHECK(doc.allowed.admits_index(VertexId{0}, 6));
  CHECK_FALSE(doc.allowed.admits_index(VertexId{0}, 3));
}

TEST_CASE("normalize_index_set drops multiples") {
  CHECK(normalize_index_set({4, 2}) == std::vector<Int>{2});
  CHECK(normalize_index_set({3, 2, 6, 9}) == std::vector<Int>{2, 3});
  CHECK(normalize_index_set({5, 1}) == std::vector<Int>{1});
  CHECK_THROWS_AS(normalize_index_set({}), ParseError);
}

TEST_CASE("serialize round-trips") {
  SUBCASE("integers") {
    Graph g;
    g.set_basepoint(g.add_vertex("v"));
    std::string text = serialize_graph(g, AllowedFamily(1));
    CHECK(text == "gbs v1\nvertex v\nbasepoint v\n");
    CHECK(same_document(parse_graph(text), {g, AllowedFamily(1)}));
  }
  SUBCASE("BS(2,4) with allowed sets and markings") {
    auto doc = parse_graph(
        "gbs v1\nvertex v\nvertex w\nedge e v v 2 4\nedge f v w -3 5\n"
        "basepoint w\nallowed v 2 3\ngen x = ~f e v ~e f\ngen y = w^7\n");
    auto again = parse_graph(serialize_graph(doc.graph, doc.allowed));
    CHECK(same_document(doc, again));
    CHECK(format_word(again.graph, again.graph.marking()[0].word) == "~f e v ~e f");
  }
  SUBCASE("random graphs") {
    std::mt19937_64 rng(testing::seed_from_env(11));
    for (int i = 0; i < 50; ++i) {
      Graph g = testing::random_graph(rng, {});
      AllowedFamily a(g.vertex_count());
      a.set(VertexId{0}, {2, 3});
      CHECK(same_document(parse_graph(serialize_graph(g, a)), {g, a}));
    }
  }
}

TEST_CASE("subdivide_loops") {
  SUBCASE("no loops: identity") {
    auto doc = parse_graph("gbs v1\nvertex v\nvertex w\nedge e v w 2 3\nbasepoint v\n");
    Graph s = subdivide_loops(doc.graph);
    CHECK(same_document({s, doc.allowed}, doc));
  }
  SUBCASE("BS(2,4)") {
    Graph g = parse_graph(kBS24).graph;
    Graph s = subdivide_loops(g);
    REQUIRE(s.vertex_count() == 2);
    REQUIRE(s.edge_count() == 2);
    const auto& r0 = s.edge_record(0);
    const auto& r1 = s.edge_record(1);
    CHECK(r0.label_origin == 2);
    CHECK(r0.label_terminus == 1);
    CHECK(r1.label_origin == 1);
    CHECK(r1.label_terminus == 4);
    for (int k = 0; k < 2 * s.edge_count(); ++k) CHECK_FALSE(s.is_loop(EdgeId{k}));
    // the middle vertex group is the edge group: v^2 = m = v^4 across e
    VertexId m = r0.terminus;
    Path through = parse_word(s, s.edge_name(EdgeId{0}) + " " + s.vertex_name(m) +
                                     " ~" + s.edge_name(EdgeId{0}));
    CHECK(elements_equal(s, through, vertex_power(s.basepoint(), 2)));
    // subdividing again changes nothing
    CHECK(same_document({subdivide_loops(s), AllowedFamily(2)}, {s, AllowedFamily(2)}));
  }
  SUBCASE("translation length doubles on the subdivided loop") {
    Graph g = loop_graph(1, 2);
    Graph marked = g;
    marked.set_marking({{"t", parse_word(g, "e")}});
    Graph s = subdivide_loops(marked);
    CHECK(translation_length(g, parse_word(g, "e")) == 1);
    CHECK(translation_length(s, s.marking()[0].word) == 2);
  }
  SUBCASE("new allowed sets describe the old edge group") {
    auto doc = parse_graph("gbs v1\nvertex v\nedge e v v 4 6\nbasepoint v\nallowed v 2\n");
    REQUIRE(family_contains_edge_groups(doc.graph, doc.allowed));
    auto s = subdivide_loops(doc.graph, doc.allowed);
    REQUIRE(s.allowed.size() == 2);
    CHECK(s.allowed.at(VertexId{0}) == std::vector<Int>{2});
    // the edge group is allowed, so every subgroup of the new vertex group is
    CHECK(s.allowed.at(VertexId{1}) == std::vector<Int>{1});
    CHECK(family_contains_edge_groups(s.graph, s.allowed));
  }
}

TEST_CASE("classify_elementary") {
  CHECK(classify_elementary(loop_graph(1, 1)).kind == ElementaryKind::Z2);
  CHECK(classify_elementary(loop_graph(-1, -1)).kind == ElementaryKind::Z2);
  CHECK(classify_elementary(loop_graph(1, -1)).kind == ElementaryKind::KleinBottle);
  CHECK(classify_elementary(loop_graph(-1, 1)).kind == ElementaryKind::KleinBottle);
  auto bs = classify_elementary(loop_graph(1, 2));
  CHECK(bs.kind == ElementaryKind::SolvableBS);
  CHECK(bs.bs_parameter == 2);
  CHECK(to_string(bs) == "SolvableBS(2)");
  CHECK(classify_elementary(loop_graph(2, 4)).kind == ElementaryKind::NonElementary);
  CHECK(classify_elementary(loop_graph(2, 3)).kind == ElementaryKind::NonElementary);

  // the same groups hidden behind collapsible edges
  auto doc = parse_graph(
      "gbs v1\nvertex v\nvertex w\nvertex u\nedge f v w 3 1\nedge g w u 1 1\n"
      "edge e u u 1 -1\nbasepoint v\n");
  CHECK(classify_elementary(doc.graph).kind == ElementaryKind::NonElementary);
  auto doc2 = parse_graph(
      "gbs v1\nvertex v\nvertex w\nedge f v w 1 1\nedge e w w 1 -1\nbasepoint v\n");
  CHECK(classify_elementary(doc2.graph).kind == ElementaryKind::KleinBottle);

  // invariance under reduction on random graphs
  std::mt19937_64 rng(testing::seed_from_env(12));
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_graph(rng, {});
    Graph r = reduce_graph(g, AllowedFamily(g.vertex_count())).graph;
    CHECK(classify_elementary(g) == classify_elementary(r));
  }
}

TEST_CASE("betti_number") {
  Graph z;
  z.set_basepoint(z.add_vertex("v"));
  CHECK(betti_number(z) == 0);
  CHECK(betti_number(loop_graph(3, 7)) == 1);
  auto theta = parse_graph(
      "gbs v1\nvertex v\nvertex w\nedge a v w 1 2\nedge b v w 3 1\nedge c v w 2 2\n"
      "basepoint v\n");
  CHECK(betti_number(theta.graph) == 2);

  std::mt19937_64 rng(testing::seed_from_env(13));
  for (int i = 0; i < 100; ++i) {
    Graph g = testing::random_graph(rng, {});
    CHECK(betti_number(subdivide_loops(g)) == betti_number(g));
    CHECK(betti_number(reduce_graph(g, AllowedFamily(g.vertex_count())).graph) ==
          betti_number(g));
  }
}

TEST_CASE("amin_sets") {
  CHECK(amin_sets(loop_graph(2, 4)).at(VertexId{0}) == std::vector<Int>{2});
  CHECK(amin_sets(loop_graph(2, 3)).at(VertexId{0}) == std::vector<Int>{2, 3});
  CHECK(amin_sets(loop_graph(1, 5)).at(VertexId{0}) == std::vector<Int>{1});
  CHECK(amin_sets(loop_graph(-2, 3)).at(VertexId{0}) == std::vector<Int>{2, 3});
  auto collapsible = parse_graph(
      "gbs v1\nvertex v\nvertex w\nedge f v w 2 1\nedge e v v 2 3\nbasepoint v\n");
  CHECK_FALSE(is_reduced(collapsible.graph));
  CHECK_THROWS_AS(amin_sets(collapsible.graph), DomainError);
}
