#pragma once

// JSON forms of instances, output triples, traces and certificates.
//
//   scalar    real: number; complex: [re, im]
//   function  {"values": [scalar, ...]}
//   kernel    {"columns": [[scalar, ...], ...]}   column j holds h(t_j); column-major only
//   instance  {"field", "weights", "f0", "g0", "kernel", "eps", "eta_mode"}
//   result    {"field", "T3": kernel, "f3": function, "g2": function}
//
// Atom and block indices are 0-based.

#include <nlohmann/json.hpp>

#include "correction.hpp"

namespace bpbnu::io {

using json = nlohmann::ordered_json;

inline Field peek_field(const json& j)
{
    if (!j.is_object() || !j.contains("field") || !j["field"].is_string())
        throw parse_error("missing string member 'field'");
    return parse_field(j["field"].get<std::string>());
}

template <Scalar S>
json scalar_to_json(S z)
{
    if constexpr (is_complex_v<S>)
        return json::array({z.real(), z.imag()});
    else
        return z;
}

template <Scalar S>
S scalar_from_json(const json& j)
{
    if constexpr (is_complex_v<S>) {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw parse_error("complex scalars must be [re, im] pairs");
        return {j[0].get<double>(), j[1].get<double>()};
    } else {
        if (!j.is_number())
            throw parse_error("real scalars must be numbers");
        return j.get<double>();
    }
}

template <Scalar S>
json scalars_to_json(std::span<const S> v)
{
    json a = json::array();
    for (const auto& z : v)
        a.push_back(scalar_to_json(z));
    return a;
}

template <Scalar S>
std::vector<S> scalars_from_json(const json& j, const char* what)
{
    if (!j.is_array())
        throw parse_error(std::string(what) + " must be an array");
    std::vector<S> v;
    v.reserve(j.size());
    for (const auto& e : j)
        v.push_back(scalar_from_json<S>(e));
    return v;
}

template <Scalar S, class Kind>
json function_to_json(const AtomFunction<S, Kind>& f)
{
    return json{{"values", scalars_to_json<S>(f.values())}};
}

template <class Fn>
Fn function_from_json(const json& j, const SpacePtr& space, const char* what)
{
    using S = typename Fn::scalar_type;
    if (!j.is_object() || !j.contains("values"))
        throw parse_error(std::string(what) + " must be an object with 'values'");
    auto v = scalars_from_json<S>(j["values"], what);
    if (v.size() != space->size())
        throw parse_error(std::string(what) + " has the wrong number of values");
    return Fn(space, std::move(v));
}

template <Scalar S>
json kernel_to_json(const Kernel<S>& k)
{
    json cols = json::array();
    for (const auto& c : k.columns())
        cols.push_back(scalars_to_json<S>(c.values()));
    return json{{"columns", std::move(cols)}};
}

template <Scalar S>
Kernel<S> kernel_from_json(const json& j, const SpacePtr& space)
{
    if (!j.is_object())
        throw parse_error("kernel must be an object");
    if (j.contains("rows"))
        throw parse_error("kernel must be given column-major under 'columns'; 'rows' is not accepted");
    if (!j.contains("columns") || !j["columns"].is_array())
        throw parse_error("kernel needs a 'columns' array");
    const auto& cols = j["columns"];
    if (cols.size() != space->size())
        throw parse_error("kernel needs one column per atom");
    std::vector<L1Fn<S>> out;
    for (const auto& c : cols) {
        auto v = scalars_from_json<S>(c, "kernel column");
        if (v.size() != space->size())
            throw parse_error("kernel column has the wrong length");
        out.emplace_back(space, std::move(v));
    }
    return Kernel<S>(space, std::move(out));
}

inline SpacePtr space_from_json(const json& j)
{
    if (!j.contains("weights") || !j["weights"].is_array())
        throw parse_error("missing 'weights' array");
    std::vector<double> w;
    for (const auto& x : j["weights"]) {
        if (!x.is_number())
            throw parse_error("weights must be numbers");
        w.push_back(x.get<double>());
    }
    try {
        return MeasureSpace::make(std::move(w));
    } catch (const precondition_error& e) {
        throw parse_error(e.what());
    }
}

inline json eta_mode_to_json(const EtaMode& m) { return m.str(); }

inline EtaMode eta_mode_from_json(const json& j)
{
    if (!j.is_string())
        throw parse_error("'eta_mode' must be a string");
    return EtaMode::parse(j.get<std::string>());
}

template <Scalar S>
json instance_to_json(const CorrectionInput<S>& in)
{
    json w = json::array();
    for (double x : in.space()->weights())
        w.push_back(x);
    return json{{"field", std::string(to_string(field_of<S>))},
                {"weights", std::move(w)},
                {"f0", function_to_json(in.f0)},
                {"g0", function_to_json(in.g0)},
                {"kernel", kernel_to_json(in.T0.kernel())},
                {"eps", in.eps},
                {"eta_mode", eta_mode_to_json(in.eta_mode)}};
}

/// Parses without validating the hypothesis (see `validate`).
template <Scalar S>
CorrectionInput<S> instance_from_json(const json& j)
{
    if (peek_field(j) != field_of<S>)
        throw parse_error("instance field does not match the requested scalar type");
    const auto space = space_from_json(j);
    for (const char* key : {"f0", "g0", "kernel", "eps"})
        if (!j.contains(key))
            throw parse_error(std::string("instance is missing '") + key + "'");
    if (!j["eps"].is_number())
        throw parse_error("'eps' must be a number");
    CorrectionInput<S> in;
    in.f0 = function_from_json<L1Fn<S>>(j["f0"], space, "f0");
    in.g0 = function_from_json<LInfFn<S>>(j["g0"], space, "g0");
    in.T0 = RepOperator<S>(kernel_from_json<S>(j["kernel"], space));
    in.eps = j["eps"].get<double>();
    in.eta_mode = j.contains("eta_mode") ? eta_mode_from_json(j["eta_mode"]) : EtaMode::paper();
    return in;
}

template <Scalar S>
struct Triple {
    RepOperator<S> T3;
    L1Fn<S> f3;
    LInfFn<S> g2;
};

template <Scalar S>
json result_to_json(const RepOperator<S>& T3, const L1Fn<S>& f3, const LInfFn<S>& g2)
{
    return json{{"field", std::string(to_string(field_of<S>))},
                {"T3", kernel_to_json(T3.kernel())},
                {"f3", function_to_json(f3)},
                {"g2", function_to_json(g2)}};
}

/// Accepts a bare result object or a full report carrying one under "result".
template <Scalar S>
Triple<S> result_from_json(const json& j, const SpacePtr& space)
{
    const json& r = (j.is_object() && j.contains("result")) ? j["result"] : j;
    if (!r.is_object())
        throw parse_error("result must be an object");
    if (r.contains("field") && peek_field(r) != field_of<S>)
        throw parse_error("result field does not match the instance");
    for (const char* key : {"T3", "f3", "g2"})
        if (!r.contains(key))
            throw parse_error(std::string("result is missing '") + key + "'");
    return {RepOperator<S>(kernel_from_json<S>(r["T3"], space)), function_from_json<L1Fn<S>>(r["f3"], space, "f3"),
            function_from_json<LInfFn<S>>(r["g2"], space, "g2")};
}

inline json atoms_to_json(const AtomSet& a) { return a.members(); }

inline json bounds_to_json(const std::vector<BoundRecord>& bounds)
{
    json a = json::array();
    for (const auto& b : bounds) {
        json e{{"name", b.name},
               {"lhs", b.lhs},
               {"rhs", b.rhs},
               {"margin", b.margin},
               {"relation", std::string(to_string(b.rel))},
               {"holds", b.holds}};
        if (!b.at.empty())
            e["at"] = b.at;
        a.push_back(std::move(e));
    }
    return a;
}

inline json thresholds_to_json(const Thresholds& t)
{
    return json{{"eps", t.eps},
                {"eta", t.eta},
                {"concentration", t.concentration},
                {"block_gap", t.block_gap},
                {"alignment", t.alignment},
                {"pointwise", t.pointwise}};
}

template <Scalar S>
json trace_to_json(const CorrectionTrace<S>& tr)
{
    const auto& b = tr.blocks;
    const auto& t = tr.truncation;
    const auto& fl = tr.flattening;
    const auto& c = tr.concentration;
    const auto& u = tr.unimodularization;

    json blocks = json::array();
    for (const auto& d : b.blocks)
        blocks.push_back(atoms_to_json(d));
    auto fn_list = [](const std::vector<L1Fn<S>>& fs) {
        json a = json::array();
        for (const auto& f : fs)
            a.push_back(function_to_json(f));
        return a;
    };
    json P = json::array();
    for (const auto& p : c.P)
        P.push_back(atoms_to_json(p));

    return json{{"eta_mode", tr.eta_mode.str()},
                {"thresholds", thresholds_to_json(tr.thresholds)},
                {"lambda0", scalar_to_json(tr.lambda0)},
                {"blocks", std::move(blocks)},
                {"alpha", scalars_to_json<S>(b.alpha)},
                {"gamma", scalars_to_json<S>(b.gamma)},
                {"F", t.F},
                {"beta", scalars_to_json<S>(t.beta)},
                {"f2", function_to_json(t.f2)},
                {"anchors", fl.anchors},
                {"psi", fn_list(fl.psi)},
                {"norm_T1", fl.norm_T1},
                {"T1", kernel_to_json(fl.T1.kernel())},
                {"T2", kernel_to_json(fl.T2.kernel())},
                {"G", c.G},
                {"phi", fn_list(fl.phi)},
                {"P", std::move(P)},
                {"varphi", fn_list(c.varphi)},
                {"h3", kernel_to_json(c.h3)},
                {"f3", function_to_json(c.f3)},
                {"A", atoms_to_json(u.A)},
                {"g2", function_to_json(u.g2)},
                {"bounds", bounds_to_json(tr.bounds)}};
}

inline json certificate_to_json(const Certificate& c)
{
    return json{{"attain_pair", c.attain_pair},
                {"attain_op", c.attain_op},
                {"nu_T3", c.nu_T3},
                {"norm_f3", c.norm_f3},
                {"norm_g2", c.norm_g2},
                {"dist_f", c.dist_f},
                {"dist_g", c.dist_g},
                {"dist_T", c.dist_T},
                {"eps", c.eps},
                {"tolerance", c.tolerance},
                {"eta_mode", c.eta_mode},
                {"verdict", c.verdict},
                {"certified", c.certified},
                {"failures", c.failures}};
}

template <Scalar S>
json report_to_json(const CorrectionInput<S>& in, const CorrectionResult<S>& r, const Certificate& cert)
{
    return json{{"field", std::string(to_string(field_of<S>))},
                {"eps", in.eps},
                {"eta_mode", in.eta_mode.str()},
                {"eta", in.eta()},
                {"trace", trace_to_json(r.trace)},
                {"certificate", certificate_to_json(cert)},
                {"result", result_to_json(r.T3, r.f3, r.g2)}};
}

} // namespace bpbnu::io
