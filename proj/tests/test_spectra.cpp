#include "edgericci/generators.hpp"
#include "edgericci/laplacian.hpp"
#include "edgericci/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace edgericci;

TEST(Jacobi, IdentityAndDiagonal)
{
    const auto eig = eigenvalues_symmetric(Matrix::identity(4));
    for (double x : eig)
        EXPECT_DOUBLE_EQ(x, 1.0);
    const std::vector<double> d{3.0, -1.0, 2.0};
    EXPECT_EQ(eigenvalues_symmetric(Matrix::diagonal(d)), (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(Jacobi, SingleEdgeLaplacian)
{
    const Graph g = generate(GraphFamily::path(2));
    const auto s = spectrum_of(assemble(LaplacianKind::L0, g, WeightMatrices::unit(g)));
    ASSERT_EQ(s.eigenvalues.size(), 2U);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-14);
    EXPECT_NEAR(s.eigenvalues[1], 2.0, 1e-14);
    EXPECT_EQ(s.zero_multiplicity, 1U);
}

TEST(Jacobi, CompleteGraphLaplacian)
{
    for (std::size_t n = 3; n <= 8; ++n) {
        const Graph g = generate(GraphFamily::complete(n));
        const auto s = spectrum_of(assemble(LaplacianKind::L0, g, WeightMatrices::unit(g)));
        EXPECT_EQ(s.zero_multiplicity, 1U);
        for (std::size_t i = 1; i < n; ++i)
            EXPECT_NEAR(s.eigenvalues[i], static_cast<double>(n), 1e-10);
    }
}

TEST(Jacobi, TraceAndCharacteristicPolynomial)
{
    Xoshiro256 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                a(i, j) = a(j, i) = 4.0 * rng.uniform() - 2.0;
        const auto eig = eigenvalues_symmetric(a);
        EXPECT_NEAR(eig[0] + eig[1] + eig[2], a.trace(), 1e-12);
        const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        EXPECT_NEAR(eig[0] * eig[1] * eig[2], det, 1e-11);
        const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                              a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
        EXPECT_NEAR(eig[0] * eig[1] + eig[0] * eig[2] + eig[1] * eig[2], minors, 1e-11);
    }
}

TEST(Jacobi, RejectsNonSymmetric)
{
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    try {
        (void)eigenvalues_symmetric(a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
}

TEST(Spectra, CycleSpectrumOfLprimeOne)
{
    const std::size_t n = 5;
    const Graph g = generate(GraphFamily::cycle(n));
    const EdgeSpace s(g);
    const auto sp = spectrum_of(assemble(LaplacianKind::Lprime1, g, WeightMatrices::curvature_adapted(s)));
    std::vector<double> want;
    for (std::size_t k = 0; k < n; ++k)
        want.push_back(1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < n; ++i)
        EXPECT_NEAR(sp.eigenvalues[i], want[i], 1e-10);
    EXPECT_EQ(sp.zero_multiplicity, 1U);
}

TEST(Spectra, EdgeKernelIsCycleSpace)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = generate(GraphFamily::random_connected(7, 0.4, seed));
        const auto sp = spectrum_of(assemble(LaplacianKind::L1, g, WeightMatrices::normalized(g)));
        EXPECT_EQ(sp.zero_multiplicity, g.edge_count() - g.vertex_count() + 1);
    }
}

TEST(Spectra, EquivalenceOnRandomGraphs)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = generate(GraphFamily::random_connected(8, 0.3, 70 + seed));
        const auto r = spectral_equivalence_check(g, WeightMatrices::normalized(g));
        EXPECT_TRUE(r.equivalent) << r.diagnostic;
        EXPECT_LT(r.max_deviation, 1e-10);
    }
}

TEST(Spectra, ZeroThresholdScalesWithLargestEigenvalue)
{
    const auto s = classify({5e-8, 1e-9, 10.0});
    EXPECT_DOUBLE_EQ(s.zero_threshold, 1e-7);
    EXPECT_EQ(s.zero_multiplicity, 2U);
    EXPECT_DOUBLE_EQ(s.lambda1(), 10.0);
    const auto z = classify({0.0, 1e-10});
    EXPECT_EQ(z.zero_multiplicity, 2U);
    EXPECT_THROW((void)z.lambda1(), Error);
    EXPECT_THROW(classify({1.0}, 0.0), Error);
}
