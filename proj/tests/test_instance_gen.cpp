#include <complex>

#include <gtest/gtest.h>

#include <bpbnu/bpbnu.hpp>
#include <bpbnu/json_io.hpp>

using namespace bpbnu;
using cplx = std::complex<double>;

namespace {

GenSpec make_spec(std::size_t n, Field field, Structure st, double gap, std::uint64_t seed, double eps = 0.9)
{
    GenSpec s;
    s.n = n;
    s.field = field;
    s.structure = st;
    s.gap = gap;
    s.seed = seed;
    s.eps = eps;
    return s;
}

} // namespace

TEST(Gen, TrivialOneAtom)
{
    const auto in = gen<double>(make_spec(1, Field::real, Structure::attaining, 0.0, 1));
    EXPECT_EQ(in.space()->size(), 1u);
    EXPECT_NEAR(pairing(in.g0, in.f0), 1.0, 1e-15);
    EXPECT_NEAR(numerical_radius(in.T0), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(pairing(in.g0, bpbnu::apply(in.T0, in.f0))), 1.0, 1e-15);
}

TEST(Gen, DefectedTwoAtoms)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto in = gen<double>(make_spec(2, Field::real, Structure::defected, 1e-12, seed));
        EXPECT_NO_THROW(validate(in));
        const double att = std::abs(pairing(in.g0, bpbnu::apply(in.T0, in.f0)));
        EXPECT_LT(att, 1.0);
        EXPECT_GT(att, 1.0 - in.eta());
    }
}

TEST(Gen, ClusteredFiftyHasFewerBlocks)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto in = gen<cplx>(make_spec(50, Field::complex, Structure::clustered_blocks, 1e-12, seed));
        const auto b = build_blocks(in.f0, in.g0, in.T0.kernel(), in.eta());
        EXPECT_LT(b.size(), 50u) << "seed " << seed;
    }
}

TEST(Gen, Deterministic)
{
    const auto spec = make_spec(7, Field::complex, Structure::clustered_blocks, 1e-12, 99);
    EXPECT_EQ(io::instance_to_json(gen<cplx>(spec)).dump(), io::instance_to_json(gen<cplx>(spec)).dump());
    auto other = spec;
    other.seed = 100;
    EXPECT_NE(io::instance_to_json(gen<cplx>(spec)).dump(), io::instance_to_json(gen<cplx>(other)).dump());
}

TEST(Gen, AlwaysValid)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        for (auto st : {Structure::attaining, Structure::defected, Structure::clustered_blocks}) {
            const double gap = st == Structure::attaining ? 0.0 : 1e-12;
            const std::size_t n = 1 + seed % 13;
            EXPECT_NO_THROW(gen<double>(make_spec(n, Field::real, st, gap, seed)));
            EXPECT_NO_THROW(gen<cplx>(make_spec(n, Field::complex, st, gap, seed, 0.99)));
        }
    }
}

TEST(Gen, InfeasibleSpecs)
{
    EXPECT_THROW(gen<double>(make_spec(3, Field::real, Structure::defected, 1.0, 0)), precondition_error);
    EXPECT_THROW(gen<double>(make_spec(3, Field::real, Structure::attaining, 1e-13, 0)), precondition_error);
    EXPECT_THROW(gen<double>(make_spec(0, Field::real, Structure::attaining, 0.0, 0)), precondition_error);
    EXPECT_THROW(gen<double>(make_spec(3, Field::complex, Structure::attaining, 0.0, 0)), precondition_error);
    EXPECT_THROW(gen<double>(make_spec(3, Field::real, Structure::attaining, 0.0, 0, 1.0)), precondition_error);
    auto custom = make_spec(3, Field::real, Structure::defected, 1e-5, 0);
    EXPECT_THROW(gen<double>(custom), precondition_error);
    custom.eta_mode = EtaMode::custom(1e-4);
    EXPECT_NO_THROW(gen<double>(custom));
}

TEST(Structure, Names)
{
    for (auto s : {Structure::attaining, Structure::defected, Structure::clustered_blocks})
        EXPECT_EQ(parse_structure(to_string(s)), s);
    EXPECT_THROW(parse_structure("clustered"), parse_error);
}

TEST(Sweep, EmpiricalEtaAtLeastPaper)
{
    const auto rows = sweep<double>({0.5, 0.9}, 4, 3, 12);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.eta_paper, eta(r.eps));
        EXPECT_GE(r.eta_empirical, r.eta_paper);
        EXPECT_EQ(r.n, 4u);
        EXPECT_EQ(r.trials, 3u);
        EXPECT_EQ(r.seed, 12u);
    }
}

TEST(Sweep, DeterministicAndValidated)
{
    const auto a = sweep<cplx>({0.7}, 3, 2, 5);
    const auto b = sweep<cplx>({0.7}, 3, 2, 5);
    EXPECT_EQ(a[0].eta_empirical, b[0].eta_empirical);
    EXPECT_THROW(sweep<double>({1.5}, 3, 2, 5), precondition_error);
    EXPECT_THROW(sweep<double>({0.5}, 3, 0, 5), precondition_error);
}
