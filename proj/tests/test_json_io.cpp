#include <complex>

#include <gtest/gtest.h>

#include <bpbnu/bpbnu.hpp>
#include <bpbnu/json_io.hpp>

using namespace bpbnu;
using io::json;
using cplx = std::complex<double>;

namespace {

template <Scalar S>
CorrectionInput<S> sample(Field f, std::uint64_t seed)
{
    GenSpec s;
    s.n = 6;
    s.field = f;
    s.eps = 0.95;
    s.structure = Structure::clustered_blocks;
    s.gap = 1e-12;
    s.seed = seed;
    return gen<S>(s);
}

json two_atom_instance()
{
    return json::parse(R"({"field":"real","weights":[1,1],"f0":{"values":[0.6,0.4]},"g0":{"values":[1,1]},
        "kernel":{"columns":[[1,0],[0,0.999999999999]]},"eps":0.99,"eta_mode":"paper"})");
}

} // namespace

TEST(Json, InstanceRoundTripIsExact)
{
    const auto in = sample<cplx>(Field::complex, 3);
    const auto j = io::instance_to_json(in);
    const auto back = io::instance_from_json<cplx>(json::parse(j.dump()));
    EXPECT_EQ(back.T0, in.T0);
    EXPECT_EQ(back.f0, in.f0);
    EXPECT_EQ(back.g0, in.g0);
    EXPECT_EQ(back.eps, in.eps);
    EXPECT_EQ(back.eta_mode, in.eta_mode);
    EXPECT_EQ(io::instance_to_json(back).dump(), j.dump());
}

TEST(Json, ResultRoundTripFromReport)
{
    const auto in = sample<double>(Field::real, 4);
    const auto r = correct(in);
    const auto report = io::report_to_json(in, r, verify(r, in));
    const auto t = io::result_from_json<double>(json::parse(report.dump()), in.space());
    EXPECT_EQ(t.T3, r.T3);
    EXPECT_EQ(t.f3, r.f3);
    EXPECT_EQ(t.g2, r.g2);
    EXPECT_TRUE(verify(t.T3, t.f3, t.g2, in).verdict);
}

TEST(Json, ReportLayout)
{
    const auto in = io::instance_from_json<double>(two_atom_instance());
    const auto r = correct(in);
    const auto j = io::report_to_json(in, r, verify(r, in));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"field", "eps", "eta_mode", "eta", "trace", "certificate", "result"}));
    const auto& bounds = j["trace"]["bounds"];
    ASSERT_TRUE(bounds.is_array());
    for (const auto& b : bounds)
        for (const char* k : {"name", "lhs", "rhs", "margin"})
            EXPECT_TRUE(b.contains(k));
    EXPECT_TRUE(j["certificate"]["verdict"].get<bool>());
    EXPECT_EQ(j["trace"]["G"], json::array({0, 1}));
}

TEST(Json, RejectsRowMajorKernel)
{
    auto j = two_atom_instance();
    j["kernel"] = json::parse(R"({"rows":[[1,0],[0,1]]})");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);
}

TEST(Json, RejectsMalformedScalars)
{
    auto j = two_atom_instance();
    j["field"] = "complex";
    EXPECT_THROW(io::instance_from_json<cplx>(j), parse_error);

    j = two_atom_instance();
    j["f0"]["values"] = json::parse("[[0.6,0],[0.4,0]]");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    j = two_atom_instance();
    j["f0"]["values"] = json::parse("[0.6]");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    j = two_atom_instance();
    j["kernel"]["columns"] = json::parse("[[1,0]]");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    j = two_atom_instance();
    j["weights"] = json::parse("[1,-1]");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    j = two_atom_instance();
    j.erase("eps");
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    j = two_atom_instance();
    j["eta_mode"] = "custom:abc";
    EXPECT_THROW(io::instance_from_json<double>(j), parse_error);

    EXPECT_THROW(io::peek_field(json::parse(R"({"field":"quaternion"})")), parse_error);
    EXPECT_THROW(io::peek_field(json::parse("[]")), parse_error);
}

TEST(Json, ComplexScalarsArePairs)
{
    EXPECT_EQ(io::scalar_to_json(cplx(1.5, -2)).dump(), "[1.5,-2.0]");
    EXPECT_EQ(io::scalar_from_json<cplx>(json::parse("[0.25, 3]")), cplx(0.25, 3));
    EXPECT_THROW(io::scalar_from_json<cplx>(json::parse("[1,2,3]")), parse_error);
    EXPECT_THROW(io::scalar_from_json<cplx>(json::parse("1")), parse_error);
    EXPECT_THROW(io::scalar_from_json<double>(json::parse("\"1\"")), parse_error);
}
