#include "edgericci/generators.hpp"
#include "edgericci/graph.hpp"
#include "edgericci/io.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace edgericci;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidParameter;
}

} // namespace

TEST(EdgeList, ParsesCommentsBlankLinesAndCrlf)
{
    const Graph g = parse_edgelist("# triangle\r\na b\r\n\r\nb c\nc a\n");
    EXPECT_EQ(g.vertex_count(), 3U);
    EXPECT_EQ(g.edge_count(), 3U);
    EXPECT_EQ(vertex_degree(g, "a"), 2U);
    EXPECT_EQ(g.label(0), "a"); // first appearance order
}

TEST(EdgeList, RejectsMalformedInput)
{
    EXPECT_EQ(code_of([] { parse_edgelist("a b\nc\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_edgelist("a b c\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_edgelist("a a\n"); }), ErrorCode::SelfLoop);
    EXPECT_EQ(code_of([] { parse_edgelist("a b\nb a\n"); }), ErrorCode::DuplicateEdge);
    EXPECT_EQ(code_of([] { parse_edgelist("a b\nc d\n"); }), ErrorCode::Disconnected);
    EXPECT_EQ(code_of([] { parse_edgelist("# nothing\n\n"); }), ErrorCode::EmptyInput);
}

TEST(EdgeList, ErrorsNameTheLine)
{
    try {
        parse_edgelist("a b\nb c\nc\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(EdgeList, RoundTrip)
{
    for (const auto& f : {GraphFamily::petersen(), GraphFamily::random_connected(9, 0.4, 3),
                          GraphFamily::complete_bipartite(2, 5)}) {
        const Graph g = generate(f);
        EXPECT_EQ(parse_edgelist(serialize_edgelist(g)), g) << f.name();
    }
}

TEST(Graph, QueriesAndEdgeOrder)
{
    const Graph g = parse_edgelist("x y\ny z\nz w\nw x\n");
    const auto xy = g.find_edge(g.vertex("x"), g.vertex("y"));
    ASSERT_TRUE(xy);
    EXPECT_EQ(g.find_edge(g.vertex("y"), g.vertex("x")), xy);
    EXPECT_FALSE(g.find_edge(g.vertex("x"), g.vertex("z")));
    for (EdgeIndex e = 1; e < g.edge_count(); ++e)
        EXPECT_LT(g.edge(e - 1), g.edge(e));
    EXPECT_EQ(code_of([&] { (void)g.vertex("nope"); }), ErrorCode::UnknownVertex);
    EXPECT_FALSE(g.is_tree());
}

TEST(WeightedDocument, ParsesDefaultsAndRoundTrips)
{
    const WeightedGraph wg = parse_weighted(R"({"edges": [["a", "b", 2.5], ["b", "c"], [1, "a", 0.5]],
                                               "vertex_weights": {"b": 3}})");
    const Graph& g = wg.graph();
    EXPECT_EQ(g.vertex_count(), 4U);
    EXPECT_DOUBLE_EQ(wg.edge_weight(*g.find_edge(g.vertex("a"), g.vertex("b"))), 2.5);
    EXPECT_DOUBLE_EQ(wg.edge_weight(*g.find_edge(g.vertex("b"), g.vertex("c"))), 1.0);
    EXPECT_DOUBLE_EQ(wg.vertex_weight(g.vertex("b")), 3.0);
    EXPECT_DOUBLE_EQ(wg.vertex_weight(g.vertex("1")), 1.0);

    const WeightedGraph back = parse_weighted(serialize_weighted(wg));
    EXPECT_EQ(back.graph(), g);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        EXPECT_EQ(back.vertex_weight(back.graph().vertex(g.label(v))), wg.vertex_weight(v));
}

TEST(WeightedDocument, RejectsBadWeights)
{
    EXPECT_EQ(code_of([] { parse_weighted(R"({"edges": [["a", "b", 0]]})"); }), ErrorCode::NonpositiveWeight);
    EXPECT_EQ(code_of([] { parse_weighted(R"({"edges": [["a", "b", -1]]})"); }), ErrorCode::NonpositiveWeight);
    EXPECT_EQ(code_of([] { parse_weighted(R"({"edges": [["a", "b"]], "vertex_weights": {"c": 1}})"); }),
              ErrorCode::UnknownVertex);
    EXPECT_EQ(code_of([] { parse_weighted("{"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_weighted(R"({"edges": []})"); }), ErrorCode::EmptyInput);
}

TEST(Generators, FamilySizes)
{
    EXPECT_EQ(generate(GraphFamily::complete(6)).edge_count(), 15U);
    EXPECT_EQ(generate(GraphFamily::cycle(7)).edge_count(), 7U);
    EXPECT_EQ(generate(GraphFamily::complete_bipartite(3, 4)).edge_count(), 12U);
    EXPECT_EQ(generate(GraphFamily::star(5)).vertex_count(), 6U);
    EXPECT_EQ(generate(GraphFamily::path(5)).edge_count(), 4U);
    EXPECT_EQ(generate(GraphFamily::circulant(8, {1, 2})).edge_count(), 16U);
    EXPECT_THROW(generate(GraphFamily::circulant(6, {3})), Error); // a perfect matching is disconnected
}

TEST(Generators, PetersenIsCubic)
{
    const Graph g = generate(GraphFamily::petersen());
    EXPECT_EQ(g.vertex_count(), 10U);
    EXPECT_EQ(g.edge_count(), 15U);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        EXPECT_EQ(g.degree(v), 3U);
}

TEST(Generators, RandomTreesAreTreesAndDeterministic)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph t = generate(GraphFamily::random_tree(2 + seed % 11, seed));
        EXPECT_TRUE(t.is_tree());
        EXPECT_EQ(generate(GraphFamily::random_tree(2 + seed % 11, seed)), t);
        const Graph r = generate(GraphFamily::random_connected(3 + seed % 8, 0.3, seed));
        EXPECT_GE(r.edge_count() + 1, r.vertex_count());
    }
}

TEST(Generators, ParseFamily)
{
    EXPECT_EQ(parse_family("complete:5", 0).name(), "complete:5");
    EXPECT_EQ(parse_family("bipartite:2:3", 0).name(), "bipartite:2:3");
    EXPECT_EQ(parse_family("circulant:9:1,3", 0).name(), "circulant:9:1,3");
    EXPECT_EQ(parse_family("petersen", 0).kind, FamilyKind::Petersen);
    EXPECT_EQ(parse_family("tree:7", 11).seed, 11U);
    for (const char* bad : {"", "complete", "complete:x", "cube:3", "bipartite:2", "random:5:2", "star:3:4"})
        EXPECT_EQ(code_of([&] { generate(parse_family(bad, 0)); }), ErrorCode::InvalidParameter) << bad;
}

TEST(Xoshiro, BelowAndUniformStayInRange)
{
    Xoshiro256 rng(5);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(rng.below(7), 7U);
        const double u = rng.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    Xoshiro256 a(99);
    Xoshiro256 b(99);
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(a.next(), b.next());
}
