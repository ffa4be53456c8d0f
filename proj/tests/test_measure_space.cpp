#include <complex>

#include <gtest/gtest.h>

#include <bpbnu/measure_space.hpp>
#include <bpbnu/rng.hpp>

using namespace bpbnu;
using cplx = std::complex<double>;

TEST(MeasureSpace, RejectsEmptyAndNonPositive)
{
    EXPECT_THROW(MeasureSpace::make({}), precondition_error);
    EXPECT_THROW(MeasureSpace::make({1.0, 0.0}), precondition_error);
    EXPECT_THROW(MeasureSpace::make({1.0, -2.0}), precondition_error);
    EXPECT_DOUBLE_EQ(MeasureSpace::make({2.0, 0.5})->total_mass(), 2.5);
    EXPECT_TRUE(MeasureSpace::uniform(3)->is_unit_weight());
}

TEST(L1Norm, Examples)
{
    const auto s11 = MeasureSpace::make({1.0, 1.0});
    EXPECT_EQ(l1_norm(L1Fn<double>(s11, {1.0, 0.0})), 1.0);
    EXPECT_EQ(l1_norm(L1Fn<double>(MeasureSpace::make({1.0, 2.0}), {0.5, 0.25})), 1.0);
    EXPECT_EQ(l1_norm(L1Fn<double>(MeasureSpace::make({3.0, 7.0}))), 0.0);
}

TEST(LInfNorm, Examples)
{
    const auto s = MeasureSpace::make({1.0, 1.0});
    EXPECT_EQ(linf_norm(LInfFn<double>(s, {1.0, -1.0})), 1.0);
    EXPECT_EQ(linf_norm(LInfFn<cplx>(s, {0.3, {0.9, 0.0}})), 0.9);
    EXPECT_EQ(linf_norm(LInfFn<double>(s)), 0.0);
}

TEST(Pairing, Examples)
{
    const auto s = MeasureSpace::make({1.0, 1.0});
    EXPECT_DOUBLE_EQ(pairing(LInfFn<double>(s, {1.0, 1.0}), L1Fn<double>(s, {0.6, 0.4})), 1.0);
    EXPECT_DOUBLE_EQ(pairing(LInfFn<double>(s, {1.0, -1.0}), L1Fn<double>(s, {0.5, 0.5})), 0.0);
    const cplx p = pairing(LInfFn<cplx>(s, {cplx(0, 1), 0.0}), L1Fn<cplx>(s, {1.0, 0.0}));
    EXPECT_EQ(p, cplx(0, 1));
}

TEST(Pairing, SpaceMismatchThrows)
{
    const auto a = MeasureSpace::make({1.0, 1.0});
    const auto b = MeasureSpace::make({1.0, 2.0});
    EXPECT_THROW(pairing(LInfFn<double>(a), L1Fn<double>(b)), dimension_error);
    EXPECT_THROW(L1Fn<double>(a, {1.0}), dimension_error);
}

TEST(Pairing, HolderAndBilinearity)
{
    SplitMix64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.below(9);
        std::vector<double> w(n);
        for (auto& x : w)
            x = rng.uniform(0.1, 10.0);
        const auto s = MeasureSpace::make(w);
        L1Fn<cplx> f(s), f2(s);
        LInfFn<cplx> g(s);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = random_in_disk<cplx>(rng, 2.0);
            f2[i] = random_in_disk<cplx>(rng, 2.0);
            g[i] = random_in_disk<cplx>(rng, 2.0);
        }
        EXPECT_LE(std::abs(pairing(g, f)), linf_norm(g) * l1_norm(f) * (1 + 1e-14));
        const cplx a(0.3, -1.2);
        const cplx lhs = pairing(g, a * f + f2);
        const cplx rhs = a * pairing(g, f) + pairing(g, f2);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * (1 + std::abs(rhs)));
    }
}

TEST(Indicator, Examples)
{
    const auto s = MeasureSpace::make({1.0, 1.0});
    EXPECT_EQ(indicator<double>(s, AtomSet(2, {0})), L1Fn<double>(s, {1.0, 0.0}));
    EXPECT_EQ(indicator<double>(s, AtomSet(2, {})), L1Fn<double>(s, {0.0, 0.0}));
    EXPECT_EQ(indicator<double>(s, AtomSet::all(2)), L1Fn<double>(s, {1.0, 1.0}));

    const auto w = MeasureSpace::make({2.0, 6.0});
    EXPECT_DOUBLE_EQ(l1_norm(normalized_indicator<double>(w, AtomSet(2, {0, 1}))), 1.0);
}

TEST(AtomSet, SetOperations)
{
    const AtomSet a(5, {3, 1, 1});
    EXPECT_EQ(a.members(), (std::vector<std::size_t>{1, 3}));
    EXPECT_TRUE(a.contains(3));
    EXPECT_FALSE(a.contains(2));
    EXPECT_EQ(a.complement().members(), (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_TRUE(a.subset_of(AtomSet::all(5)));
    EXPECT_FALSE(AtomSet::all(5).subset_of(a));
    EXPECT_THROW(AtomSet(2, {2}), dimension_error);
    EXPECT_DOUBLE_EQ(a.mass(*MeasureSpace::make({1, 2, 3, 4, 5})), 6.0);
}

TEST(RescalingIsometry, Example)
{
    const auto s = MeasureSpace::make({2.0, 1.0});
    const auto phi = rescaling_isometry(s);
    const L1Fn<double> f(s, {0.5, 0.0});
    const auto pf = phi.forward(f);
    EXPECT_EQ(pf[0], 1.0);
    EXPECT_EQ(pf[1], 0.0);
    EXPECT_DOUBLE_EQ(l1_norm(f), l1_norm(pf));
    EXPECT_TRUE(pf.space()->is_unit_weight());
}

TEST(RescalingIsometry, PreservesNormsAndPairings)
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        std::vector<double> w(n);
        for (auto& x : w)
            x = rng.uniform(0.1, 10.0);
        const auto s = MeasureSpace::make(w);
        const auto phi = rescaling_isometry(s);
        L1Fn<cplx> f(s);
        LInfFn<cplx> g(s);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = random_in_disk<cplx>(rng);
            g[i] = random_in_disk<cplx>(rng);
        }
        const auto pf = phi.forward(f);
        const auto pg = phi.transport_functional(g);
        EXPECT_NEAR(l1_norm(pf), l1_norm(f), 1e-13);
        EXPECT_EQ(linf_norm(pg), linf_norm(g));
        EXPECT_NEAR(std::abs(pairing(pg, pf) - pairing(g, f)), 0.0, 1e-13);
        const auto back = phi.inverse(pf);
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-14);
        EXPECT_EQ(phi.pull_back_functional(pg), g);
    }
}
