#pragma once

// Selection lemmas used by the correction pipeline.
//
//  select_B:  B = { k : Re(beta_k z_k) > (1-eps)|beta_k| }.
//             If Re sum beta_k z_k > 1 - eps^2 then sum_{k in B} |beta_k| > 1 - eps.
//  select_C:  C = { t : Re f(t) g(t) > (1-eps)|f(t)| }.
//             If Re g(f) > 1 - eps^2 then Re int_C f g dmu > 1 - eps.
//  modulus_alignment: Re z > (1-eps)|z|  implies  |z - |z|| < sqrt(2 eps) |z|.
//
// Membership is strict; a candidate within `tie_tolerance` of its threshold is
// left out.

#include <cmath>
#include <span>
#include <vector>

#include "measure_space.hpp"

namespace bpbnu {

inline constexpr double tie_tolerance = 1e-15;
inline constexpr double normalization_tolerance = 1e-12;

struct SelectionResult {
    std::vector<std::size_t> selected;
    /// sum_{k in B} |beta_k|, or Re int_C f g dmu.
    double mass = 0.0;
    /// The lemma's hypothesis held, so `mass > 1 - eps` is guaranteed.
    bool guarantee_applicable = false;
    bool conclusion_holds = false;
};

namespace detail {

inline void require_eps(double eps, const char* who)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw precondition_error(std::string(who) + ": eps must lie in (0,1)");
}

} // namespace detail

template <Scalar S>
SelectionResult select_B(std::span<const S> beta, std::span<const S> z, double eps)
{
    detail::require_eps(eps, "select_B");
    if (beta.size() != z.size())
        throw dimension_error("select_B: beta and z differ in length");
    double total = 0.0;
    for (const auto& b : beta)
        total += std::abs(b);
    if (std::abs(total - 1.0) > normalization_tolerance)
        throw precondition_error("select_B: sum |beta_k| must equal 1");
    for (const auto& zk : z)
        if (std::abs(zk) > 1.0 + normalization_tolerance)
            throw precondition_error("select_B: |z_k| must not exceed 1");

    SelectionResult r;
    S pair_sum{0.0};
    for (std::size_t k = 0; k < beta.size(); ++k) {
        const S bz = beta[k] * z[k];
        pair_sum += bz;
        if (re(bz) - (1.0 - eps) * std::abs(beta[k]) > tie_tolerance) {
            r.selected.push_back(k);
            r.mass += std::abs(beta[k]);
        }
    }
    r.guarantee_applicable = re(pair_sum) > 1.0 - eps * eps;
    r.conclusion_holds = r.mass > 1.0 - eps;
    return r;
}

template <Scalar S>
SelectionResult select_B(const std::vector<S>& beta, const std::vector<S>& z, double eps)
{
    return select_B<S>(std::span<const S>(beta), std::span<const S>(z), eps);
}

template <Scalar S>
SelectionResult select_C(const L1Fn<S>& f, const LInfFn<S>& g, double eps)
{
    detail::require_eps(eps, "select_C");
    require_same_space(f.space(), g.space());
    if (l1_norm(f) > 1.0 + normalization_tolerance)
        throw precondition_error("select_C: ||f||_1 must not exceed 1");
    if (linf_norm(g) > 1.0 + normalization_tolerance)
        throw precondition_error("select_C: ||g||_inf must not exceed 1");

    const auto& sp = *f.space();
    SelectionResult r;
    for (std::size_t t = 0; t < f.size(); ++t) {
        const S fg = f[t] * g[t];
        if (re(fg) - (1.0 - eps) * std::abs(f[t]) > tie_tolerance) {
            r.selected.push_back(t);
            r.mass += re(fg) * sp.weight(t);
        }
    }
    r.guarantee_applicable = re(pairing(g, f)) > 1.0 - eps * eps;
    r.conclusion_holds = r.mass > 1.0 - eps;
    return r;
}

struct AlignmentResult {
    bool holds = false;      ///< Re z > (1-eps)|z|
    double deviation = 0.0;  ///< |z - |z||
    double bound = 0.0;      ///< sqrt(2 eps)|z|, meaningful when `holds`
    bool conclusion_holds = false;
};

template <Scalar S>
AlignmentResult modulus_alignment(S z, double eps)
{
    detail::require_eps(eps, "modulus_alignment");
    AlignmentResult r;
    const double m = std::abs(z);
    r.holds = re(z) > (1.0 - eps) * m;
    r.deviation = std::abs(z - S{m});
    r.bound = std::sqrt(2.0 * eps) * m;
    r.conclusion_holds = r.holds && r.deviation < r.bound;
    return r;
}

} // namespace bpbnu
