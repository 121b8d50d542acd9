#include "doctest.h"

#include "graphcurv/graph.hpp"
#include "graphcurv/detail/rng.hpp"

using namespace graphcurv;

namespace {

const char* kTwoVertexDoc = R"({
  "vertices": [{"id": "a"}, {"id": "b"}],
  "edges": [{"u": "a", "v": "b", "w": 1.0}],
  "measure": "normalized"
})";

const char* kTriangleDoc = R"({
  "vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
  "edges": [
    {"u": "a", "v": "b", "w": 1.0},
    {"u": "a", "v": "c", "w": 2.0},
    {"u": "b", "v": "c", "w": 3.0}
  ],
  "measure": "normalized"
})";

} // namespace

TEST_CASE("two-vertex ingestion under both measures") {
    const WeightedGraph g = load_graph(kTwoVertexDoc);
    CHECK(g.num_vertices() == 2);
    CHECK(g.measure(0) == 1.0);
    CHECK(g.measure(1) == 1.0);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.label(0) == "a");

    const WeightedGraph gc = load_graph(kTwoVertexDoc, MeasurePolicy::combinatorial());
    CHECK(gc.measure(0) == 1.0);
    CHECK(gc.measure(1) == 1.0);
}

TEST_CASE("triangle with weights 1,2,3 gets degree measures 3,4,5") {
    const WeightedGraph g = load_graph(kTriangleDoc);
    CHECK(g.measure(0) == doctest::Approx(3.0));
    CHECK(g.measure(1) == doctest::Approx(4.0));
    CHECK(g.measure(2) == doctest::Approx(5.0));
}

TEST_CASE("ingestion rejects malformed documents") {
    CHECK_THROWS_AS(load_graph("not json"), SchemaError);
    CHECK_THROWS_AS(load_graph(R"({"vertices": [], "edges": [], "measure": "normalized"})"),
                    SchemaError);
    // duplicate edge, same weight
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"}],
        "edges": [{"u":"a","v":"b","w":1.0},{"u":"a","v":"b","w":1.0}],
        "measure": "normalized"})"),
                    SchemaError);
    // reversed duplicate with a different weight is an asymmetric assignment
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"}],
        "edges": [{"u":"a","v":"b","w":1.0},{"u":"b","v":"a","w":2.0}],
        "measure": "normalized"})"),
                    AsymmetryError);
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
        "edges": [{"u":"a","v":"b","w":1.0},{"u":"c","v":"d","w":1.0}],
        "measure": "normalized"})"),
                    DisconnectedError);
    // an isolated vertex has degree zero, so the normalized measure
    // degenerates before connectivity is even looked at
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"},{"id":"c"}],
        "edges": [{"u":"a","v":"b","w":1.0}],
        "measure": "normalized"})"),
                    NonpositiveMeasureError);
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"},{"id":"c"}],
        "edges": [{"u":"a","v":"b","w":1.0}],
        "measure": "combinatorial"})"),
                    DisconnectedError);
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a","m":0.0},{"id":"b","m":1.0}],
        "edges": [{"u":"a","v":"b","w":1.0}],
        "measure": "custom"})"),
                    NonpositiveMeasureError);
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"}],
        "edges": [{"u":"a","v":"zzz","w":1.0}],
        "measure": "normalized"})"),
                    SchemaError);
    // custom measure requires m on every vertex
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a","m":1.0},{"id":"b"}],
        "edges": [{"u":"a","v":"b","w":1.0}],
        "measure": "custom"})"),
                    SchemaError);
    CHECK_THROWS_AS(load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"}],
        "edges": [{"u":"a","v":"b","w":0.0}],
        "measure": "normalized"})"),
                    SchemaError);
}

TEST_CASE("generators build the documented instances") {
    const WeightedGraph c4 = make_cycle(4, MeasurePolicy::normalized());
    CHECK(c4.num_vertices() == 4);
    for (int x = 0; x < 4; ++x) CHECK(c4.measure(x) == doctest::Approx(2.0));

    const WeightedGraph q3 = make_hypercube(3, MeasurePolicy::combinatorial());
    CHECK(q3.num_vertices() == 8);
    CHECK(q3.num_edges() == 12);
    for (int x = 0; x < 8; ++x) CHECK(q3.measure(x) == 1.0);

    const WeightedGraph ball = make_lattice_ball(1, 3, MeasurePolicy::combinatorial());
    CHECK(ball.num_vertices() == 7);
    CHECK(ball.num_edges() == 6);

    const WeightedGraph tree = make_tree_ball(3, 2, MeasurePolicy::combinatorial());
    CHECK(tree.num_vertices() == 1 + 3 + 6);

    CHECK_THROWS_AS(make_cycle(200, MeasurePolicy::normalized(), 100), SizeCapExceeded);
    CHECK_THROWS_AS(make_cycle(2, MeasurePolicy::normalized()), DomainError);

    const WeightedGraph viaDispatch =
        generate("hypercube", {{"d", 2}}, MeasurePolicy::normalized());
    CHECK(viaDispatch.num_vertices() == 4);
    CHECK_THROWS_AS(generate("moebius", {}, MeasurePolicy::normalized()), DomainError);
}

TEST_CASE("d_omega on reference instances") {
    CHECK(d_omega(make_path(2, MeasurePolicy::normalized())) == doctest::Approx(1.0));
    for (int d = 1; d <= 3; ++d)
        CHECK(d_omega(make_hypercube(d, MeasurePolicy::normalized())) == doctest::Approx(d));

    // single edge of weight 1/2 under the unit measure
    const WeightedGraph g = load_graph(R"({
        "vertices": [{"id":"a"},{"id":"b"}],
        "edges": [{"u":"a","v":"b","w":0.5}],
        "measure": "combinatorial"})");
    CHECK(d_omega(g) == doctest::Approx(2.0));
}

TEST_CASE("volume and hop balls") {
    const WeightedGraph c4 = make_cycle(4, MeasurePolicy::normalized());
    CHECK(volume(c4, VertexSubset::single(c4, 1)) == doctest::Approx(2.0));
    CHECK(ball(c4, 2, 0).indices() == std::vector<int>{2});

    const WeightedGraph q3 = make_hypercube(3, MeasurePolicy::combinatorial());
    CHECK(volume(q3, VertexSubset::all(q3)) == doctest::Approx(8.0));
    CHECK(ball(q3, 0, 3).size() == 8);

    CHECK_THROWS_AS(volume(c4, VertexSubset(c4, {7})), UnknownVertex);
}

TEST_CASE("volume is additive over disjoint subsets") {
    const WeightedGraph g = make_lattice_ball(2, 2, MeasurePolicy::normalized());
    std::vector<int> left, right;
    for (int x = 0; x < g.num_vertices(); ++x) (x % 2 ? left : right).push_back(x);
    const double whole = volume(g, VertexSubset::all(g));
    CHECK(volume(g, VertexSubset(g, left)) + volume(g, VertexSubset(g, right)) ==
          doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("serialize then load is the identity") {
    for (const WeightedGraph& g :
         {make_cycle(5, MeasurePolicy::normalized()),
          make_hypercube(3, MeasurePolicy::combinatorial()),
          make_random_connected(9, 42, 0.1, 2.0, MeasurePolicy::normalized()),
          scale_measure(make_cycle(5, MeasurePolicy::normalized()), 1.7),  // custom measure
          load_graph(kTriangleDoc)}) {
        const std::string doc = serialize(g);
        const WeightedGraph h = load_graph(doc);
        REQUIRE(h.num_vertices() == g.num_vertices());
        for (int x = 0; x < g.num_vertices(); ++x) {
            CHECK(h.label(x) == g.label(x));
            CHECK(h.measure(x) == g.measure(x));
        }
        REQUIRE(h.num_edges() == g.num_edges());
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            CHECK(h.edges()[i].u == g.edges()[i].u);
            CHECK(h.edges()[i].v == g.edges()[i].v);
            CHECK(h.edges()[i].w == g.edges()[i].w);
        }
        CHECK(serialize(h) == doc);
        CHECK(digest(h) == digest(g));
    }
}

TEST_CASE("d_omega scaling behavior") {
    const WeightedGraph g = make_random_connected(8, 7, 0.1, 2.0, MeasurePolicy::normalized());
    const double base = d_omega(g);
    CHECK(d_omega(scale_jointly(g, 3.0)) == doctest::Approx(base).epsilon(1e-12));
    CHECK(d_omega(scale_measure(g, 3.0)) == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("generated graphs validate and stay symmetric") {
    detail::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(10));
        const WeightedGraph g =
            make_random_connected(n, rng.bits(), 0.1, 2.0, MeasurePolicy::normalized());
        for (const auto& e : g.edges()) {
            CHECK(g.weight(e.u, e.v) == g.weight(e.v, e.u));
            CHECK(g.weight(e.u, e.v) > 0.0);
        }
    }
}
