#include "edgericci/generators.hpp"
#include "edgericci/verify.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace edgericci;

namespace {

const TheoremCheck* find(const VerificationReport& r, std::string_view name)
{
    for (const auto& c : r.checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

WeightedGraph scaled(const Graph& g, double w0, double w1)
{
    return WeightedGraph(g, std::vector<double>(g.vertex_count(), w0), std::vector<double>(g.edge_count(), w1));
}

} // namespace

TEST(SpectralLowerBound, StarsAttainEquality)
{
    for (std::size_t m = 3; m <= 8; ++m) {
        const auto c = check_main0(generate(GraphFamily::star(m)));
        EXPECT_TRUE(c.applicable);
        EXPECT_EQ(c.holds, true);
        EXPECT_TRUE(c.equality) << c.lhs << " vs " << c.rhs;
    }
}

TEST(SpectralLowerBound, CompleteGraphsHoldStrictly)
{
    for (std::size_t n = 4; n <= 7; ++n) {
        const auto c = check_main0(generate(GraphFamily::complete(n)));
        EXPECT_TRUE(c.applicable);
        EXPECT_EQ(c.holds, true);
        EXPECT_GT(c.lhs, c.rhs + 1e-6);
    }
}

TEST(SpectralLowerBound, FlatCycleIsNotApplicable)
{
    const auto c = check_main0(generate(GraphFamily::cycle(5)));
    EXPECT_FALSE(c.applicable);
    EXPECT_FALSE(c.holds.has_value());
    EXPECT_FALSE(c.failed());
    EXPECT_NE(c.reason.find("not positive"), std::string::npos);
    EXPECT_FALSE(check_main0(generate(GraphFamily::path(5))).applicable); // edge degrees differ
}

TEST(WeightedSpectralLowerBound, UnitWeightsAndScaling)
{
    const Graph g = generate(GraphFamily::star(4));
    const auto unit = check_weight3(WeightedGraph(g));
    ASSERT_TRUE(unit.applicable);
    EXPECT_EQ(unit.holds, true);
    const auto s = check_weight3(scaled(g, 2.0, 0.5));
    ASSERT_TRUE(s.applicable);
    EXPECT_NEAR(s.lhs, unit.lhs / 4.0, 1e-12);
    EXPECT_NEAR(s.rhs, unit.rhs / 4.0, 1e-12);
    EXPECT_EQ(s.holds, true);
}

TEST(WeightedSpectralLowerBound, VaryingWeightsAreNotApplicable)
{
    const Graph g = generate(GraphFamily::complete(4));
    std::vector<double> vw(g.vertex_count(), 1.0);
    vw[0] = 3.0;
    const auto c = check_weight3(WeightedGraph(g, vw, std::vector<double>(g.edge_count(), 1.0)));
    EXPECT_FALSE(c.applicable);
    EXPECT_NE(c.reason.find("vertex weights"), std::string::npos);
}

TEST(Bounds, SmallGraphsPassEveryPair)
{
    for (const auto& f : {GraphFamily::path(3), GraphFamily::complete(3), GraphFamily::petersen(),
                          GraphFamily::random_connected(9, 0.3, 12)}) {
        for (const auto& c : check_bounds(generate(f)))
            EXPECT_FALSE(c.failed()) << f.name() << " " << c.name;
    }
    Xoshiro256 rng(4);
    const Graph g = generate(GraphFamily::random_connected(8, 0.4, 6));
    std::vector<double> ew(g.edge_count());
    for (auto& w : ew)
        w = 0.5 + rng.uniform();
    for (const auto& c : check_bounds(WeightedGraph(g, std::vector<double>(g.vertex_count(), 1.5), ew), {}))
        EXPECT_FALSE(c.failed()) << c.name;
}

TEST(PairMinimum, HoldsOnCyclesAndPetersen)
{
    for (const auto& f : {GraphFamily::cycle(6), GraphFamily::petersen(), GraphFamily::random_tree(8, 2)}) {
        const auto c = check_pair_proposition(generate(f));
        EXPECT_TRUE(c.applicable) << f.name();
        EXPECT_EQ(c.holds, true) << f.name();
    }
    EXPECT_FALSE(check_pair_proposition(generate(GraphFamily::path(3))).applicable);
}

TEST(Examples, ClosedFormsPass)
{
    for (const auto& f : {GraphFamily::complete(6), GraphFamily::cycle(7), GraphFamily::star(5),
                          GraphFamily::complete_bipartite(3, 4)}) {
        const auto checks = check_examples(f, analyze(generate(f)));
        EXPECT_FALSE(checks.empty()) << f.name();
        for (const auto& c : checks)
            EXPECT_FALSE(c.failed()) << f.name() << " " << c.name;
    }
}

TEST(Report, DeterministicAndValidJson)
{
    const auto f = GraphFamily::complete(5);
    const Graph g = generate(f);
    const std::string a = render_json(verify_graph(g, {}, f));
    VerifyOptions parallel;
    parallel.jobs = 3;
    EXPECT_EQ(a, render_json(verify_graph(g, parallel, f)));

    const auto doc = nlohmann::json::parse(a);
    EXPECT_TRUE(doc.at("passed").get<bool>());
    EXPECT_EQ(doc.at("graph").at("edges").get<int>(), 10);
    bool saw_bound = false;
    for (const auto& c : doc.at("checks"))
        if (c.at("name") == "spectral_lower_bound") {
            saw_bound = true;
            EXPECT_TRUE(c.at("holds").get<bool>());
        }
    EXPECT_TRUE(saw_bound);
    EXPECT_EQ(doc.at("curvature").size(), 30U); // 5 vertices, C(4,2) pairs at each
}

TEST(Report, InapplicableChecksHaveNullHolds)
{
    const auto r = verify_graph(generate(GraphFamily::cycle(6)));
    const auto doc = nlohmann::json::parse(render_json(r));
    for (const auto& c : doc.at("checks"))
        if (c.at("name") == "spectral_lower_bound") {
            EXPECT_TRUE(c.at("holds").is_null());
        }
    ASSERT_NE(find(r, "spectral_lower_bound"), nullptr);
    EXPECT_TRUE(r.passed());
}

TEST(Report, CsvHeader)
{
    const Graph g = generate(GraphFamily::path(3));
    const auto r = verify_graph(g);
    const std::string csv = render_curvature_csv(r.curvature);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "e,e2,distance,wasserstein,kappa,kappa_exact");
}
