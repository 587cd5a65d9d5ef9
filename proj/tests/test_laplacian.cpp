#include "edgericci/generators.hpp"
#include "edgericci/laplacian.hpp"
#include "edgericci/spectra.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace edgericci;

namespace {

void expect_same_spectrum(const Spectrum& a, const Spectrum& b, double tol = 1e-9)
{
    ASSERT_EQ(a.eigenvalues.size(), b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
        EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], tol);
}

Matrix degree_minus_adjacency(const Graph& g)
{
    Matrix l(g.vertex_count(), g.vertex_count());
    for (const auto& ep : g.edges()) {
        l(ep.lo, ep.hi) -= 1;
        l(ep.hi, ep.lo) -= 1;
        l(ep.lo, ep.lo) += 1;
        l(ep.hi, ep.hi) += 1;
    }
    return l;
}

} // namespace

TEST(Incidence, SingleEdge)
{
    const Graph g = generate(GraphFamily::path(2));
    const Matrix d = build_incidence(g, Orientation::canonical(g));
    ASSERT_EQ(d.rows(), 1U);
    ASSERT_EQ(d.cols(), 2U);
    EXPECT_EQ(d(0, 0), -1.0);
    EXPECT_EQ(d(0, 1), 1.0);
    const Matrix f = build_incidence(g, Orientation::canonical(g).flipped(0));
    EXPECT_EQ(f(0, 0), 1.0);
    EXPECT_EQ(f(0, 1), -1.0);
}

TEST(Incidence, RowsSumToZeroAndRankIsVerticesMinusOne)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = generate(GraphFamily::random_connected(4 + seed, 0.3, seed));
        const Matrix d = build_incidence(g, Orientation::canonical(g));
        for (std::size_t e = 0; e < d.rows(); ++e) {
            double s = 0;
            for (std::size_t v = 0; v < d.cols(); ++v)
                s += d(e, v);
            EXPECT_EQ(s, 0.0);
        }
        const auto sp = classify(eigenvalues_symmetric(d.transpose() * d));
        EXPECT_EQ(sp.zero_multiplicity, 1U); // connected: rank |V| - 1
    }
}

TEST(Laplacian, UnitL0IsDegreeMinusAdjacency)
{
    for (const auto& f : {GraphFamily::petersen(), GraphFamily::complete(5), GraphFamily::random_tree(9, 4)}) {
        const Graph g = generate(f);
        const auto L = assemble(LaplacianKind::L0, g, WeightMatrices::unit(g));
        EXPECT_EQ(L.data, degree_minus_adjacency(g)) << f.name();
        std::vector<double> ones(g.vertex_count(), 1.0);
        for (double x : L.data.apply(ones))
            EXPECT_EQ(x, 0.0);
    }
}

TEST(Laplacian, Delta0IsRandomWalkLaplacian)
{
    const Graph g = generate(GraphFamily::star(3));
    const auto L = assemble(LaplacianKind::Delta0, g);
    const Matrix lap = degree_minus_adjacency(g);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        for (std::size_t j = 0; j < g.vertex_count(); ++j)
            EXPECT_DOUBLE_EQ(L.data(i, j), lap(i, j) / static_cast<double>(g.degree(i)));
}

TEST(Laplacian, LprimeOneDiagonalPlusLdown)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = generate(GraphFamily::random_connected(6, 0.4, 300 + seed));
        const EdgeSpace s(g);
        Xoshiro256 rng(seed);
        const auto o = Orientation::random(g, rng);
        const auto L = assemble(LaplacianKind::Lprime1, g, WeightMatrices::curvature_adapted(s), o);
        for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
            std::vector<double> f(g.edge_count(), 0.0);
            f[k] = 1.0;
            const auto down = apply_Ldown(s, f, o);
            for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
                // Two endpoints, each contributing sgn² w1(e) = 1/d_e.
                const double diag = e == k ? 2.0 / static_cast<double>(s.degree(e)) : 0.0;
                EXPECT_NEAR(L.data(e, k), diag + down[e], 1e-12) << e << "," << k;
            }
        }
    }
}

TEST(Laplacian, SpectraIgnoreOrientation)
{
    Xoshiro256 rng(11);
    for (const auto& fam : {GraphFamily::petersen(), GraphFamily::random_connected(8, 0.35, 2)}) {
        const Graph g = generate(fam);
        const EdgeSpace s(g);
        for (const auto kind : {LaplacianKind::L1, LaplacianKind::Lprime1}) {
            const auto weights = kind == LaplacianKind::Lprime1 ? WeightMatrices::curvature_adapted(s)
                                                                 : WeightMatrices::normalized(g);
            const auto base = assemble(kind, g, weights);
            const auto ref = spectrum_of(base);
            expect_same_spectrum(ref, spectrum_of(reorient(g, base, Orientation::canonical(g).flipped(0))));
            std::vector<OrientedEdge> all_flipped;
            const auto canonical = Orientation::canonical(g);
            for (const auto& oe : canonical.edges())
                all_flipped.push_back({oe.head, oe.tail});
            expect_same_spectrum(ref, spectrum_of(reorient(g, base, Orientation::from_list(g, all_flipped))));
            for (int i = 0; i < 100; ++i)
                expect_same_spectrum(ref, spectrum_of(reorient(g, base, Orientation::random(g, rng))));
        }
    }
}

TEST(Laplacian, DumpFormat)
{
    const Graph g = generate(GraphFamily::path(3));
    const auto L = assemble(LaplacianKind::L0, g, WeightMatrices::unit(g));
    std::istringstream in(dump_matrix(L));
    std::string hash_mark, kind, line;
    std::size_t rows = 0, cols = 0;
    std::string hash;
    in >> hash_mark >> kind >> rows >> cols >> hash;
    EXPECT_EQ(hash_mark, "#");
    EXPECT_EQ(kind, "L0");
    EXPECT_EQ(rows, 3U);
    EXPECT_EQ(cols, 3U);
    EXPECT_EQ(hash.size(), 16U);
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "1 -1 0");
}

TEST(Laplacian, KindNamesRoundTrip)
{
    for (const auto k : {LaplacianKind::L0, LaplacianKind::L1, LaplacianKind::Delta0, LaplacianKind::Lprime1,
                         LaplacianKind::WeightedDown})
        EXPECT_EQ(parse_laplacian_kind(to_string(k)), k);
    EXPECT_THROW(parse_laplacian_kind("L2"), Error);
}

TEST(Laplacian, Errors)
{
    const Graph g = generate(GraphFamily::cycle(4));
    try {
        (void)Orientation::from_list(g, {{0, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadOrientation);
    }
    try {
        (void)Orientation::from_list(g, {{0, 2}, {0, 3}, {1, 2}, {2, 3}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadOrientation);
    }
    auto w = WeightMatrices::unit(g);
    w.w1[2] = 0.0;
    try {
        (void)assemble(LaplacianKind::L1, g, w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularWeight);
    }
    const Graph single = parse_edgelist("a b\n");
    EXPECT_THROW(WeightMatrices::curvature_adapted(EdgeSpace(single)), Error);
}
