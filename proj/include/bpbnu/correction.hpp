#pragma once

// Correction of a near-attaining triple (T0, f0, g0) for the numerical radius on
// L1(mu) of a finite atomic space into an exactly attaining triple (T3, f3, g2).
//
// Hypothesis: ||T0|| = 1, ||f0||_1 = 1, ||g0||_inf = 1, g0(f0) = 1 and
// |g0(T0 f0)| > 1 - eta(eps), eta(eps) = eps^8 / 2^33.
// Conclusion: g2(f3) = 1, |g2(T3 f3)| = ||T3|| = 1, and T3, f3, g2 lie within
// eps of T0, f0, g0.
//
// The pipeline runs in five stages (rotate_phase, build_blocks,
// truncate_support, flatten_kernel, concentrate, unimodularize_functional).
// Every intermediate inequality is checked and logged under its tag.
// On a finite atomic space every function is simple, so the initial
// approximation is exact: f1 = f0 and g1 = g0.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "operator.hpp"
#include "scalar_lemmas.hpp"

namespace bpbnu {

/// eps^8 / 2^33.
inline double eta(double eps)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw precondition_error("eta: eps must lie in (0,1)");
    const double e2 = eps * eps;
    const double e4 = e2 * e2;
    return e4 * e4 * 0x1p-33;
}

/// Largest admissible custom eta: keeps every derived lemma parameter below 1.
inline constexpr double max_custom_eta = 1.0 / 32.0;

class EtaMode {
public:
    enum class Kind { paper, custom };

    static EtaMode paper() { return EtaMode(Kind::paper, 0.0); }

    static EtaMode custom(double value)
    {
        if (!(value > 0.0 && value < max_custom_eta))
            throw precondition_error("custom eta must lie in (0, 1/32)");
        return EtaMode(Kind::custom, value);
    }

    /// "paper" or "custom:<float>".
    static EtaMode parse(std::string_view s)
    {
        if (s == "paper")
            return paper();
        constexpr std::string_view prefix = "custom:";
        if (s.starts_with(prefix)) {
            const auto body = s.substr(prefix.size());
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
            if (ec != std::errc{} || ptr != body.data() + body.size())
                throw parse_error("bad custom eta value '" + std::string(body) + "'");
            try {
                return custom(v);
            } catch (const precondition_error& e) {
                throw parse_error(e.what());
            }
        }
        throw parse_error("eta mode must be 'paper' or 'custom:<float>', got '" + std::string(s) + "'");
    }

    Kind kind() const noexcept { return kind_; }
    bool is_paper() const noexcept { return kind_ == Kind::paper; }
    double custom_value() const noexcept { return value_; }

    double value(double eps) const { return is_paper() ? eta(eps) : value_; }

    std::string str() const
    {
        if (is_paper())
            return "paper";
        char buf[64];
        std::snprintf(buf, sizeof buf, "custom:%.17g", value_);
        return buf;
    }

    friend bool operator==(const EtaMode&, const EtaMode&) = default;

private:
    EtaMode(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

/// Thresholds derived from (eps, eta). In paper mode they take the closed forms
/// eps^4/2^16, eps^4/2^15, eps^2/2^7, eps/2^3; in custom mode they follow the same
/// derivation from eta: sqrt(2 eta), 2 sqrt(2 eta), sqrt(2 * previous), sqrt(2 * previous).
struct Thresholds {
    double eps = 0.0;
    double eta = 0.0;
    double concentration = 0.0; ///< block selection G and sum-G
    double block_gap = 0.0;     ///< gamma-k-big
    double alignment = 0.0;     ///< beta-k-gamma-k, gamma-k-norm, P_k, the set A
    double pointwise = 0.0;     ///< phi-k-beta-k-g1

    static Thresholds of(double eps, const EtaMode& mode)
    {
        Thresholds t;
        t.eps = eps;
        t.eta = mode.value(eps);
        if (mode.is_paper()) {
            const double e2 = eps * eps;
            const double e4 = e2 * e2;
            t.concentration = e4 * 0x1p-16;
            t.block_gap = e4 * 0x1p-15;
            t.alignment = e2 * 0x1p-7;
            t.pointwise = eps * 0x1p-3;
        } else {
            t.concentration = std::sqrt(2.0 * t.eta);
            t.block_gap = 2.0 * t.concentration;
            t.alignment = std::sqrt(2.0 * t.block_gap);
            t.pointwise = std::sqrt(2.0 * t.alignment);
        }
        return t;
    }
};

/// Tolerances for validating the hypothesis triple.
inline constexpr double operator_norm_tolerance = 1e-9;
inline constexpr double unit_tolerance = 1e-12;
inline constexpr double default_verify_tolerance = 1e-9;

template <Scalar S>
struct CorrectionInput {
    RepOperator<S> T0;
    L1Fn<S> f0;
    LInfFn<S> g0;
    double eps = 0.5;
    EtaMode eta_mode = EtaMode::paper();

    const SpacePtr& space() const { return f0.space(); }
    double eta() const { return eta_mode.value(eps); }
};

/// Throws precondition_error (or dimension_error) unless the hypothesis holds.
template <Scalar S>
void validate(const CorrectionInput<S>& in)
{
    if (!(in.eps > 0.0 && in.eps < 1.0))
        throw precondition_error("eps must lie in (0,1)");
    require_same_space(in.T0.space(), in.f0.space());
    require_same_space(in.g0.space(), in.f0.space());

    auto fail = [](const char* what, double v) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s (got %.17g)", what, v);
        throw precondition_error(buf);
    };
    const double nu = numerical_radius(in.T0);
    if (std::abs(nu - 1.0) > operator_norm_tolerance)
        fail("nu(T0) must equal 1", nu);
    const double nf = l1_norm(in.f0);
    if (std::abs(nf - 1.0) > unit_tolerance)
        fail("||f0||_1 must equal 1", nf);
    const double ng = linf_norm(in.g0);
    if (std::abs(ng - 1.0) > unit_tolerance)
        fail("||g0||_inf must equal 1", ng);
    const S gf = pairing(in.g0, in.f0);
    if (std::abs(gf - S{1.0}) > unit_tolerance)
        fail("g0(f0) must equal 1", std::abs(gf - S{1.0}));
    const double att = std::abs(pairing(in.g0, bpbnu::apply(in.T0, in.f0)));
    if (!(att > 1.0 - in.eta()))
        fail("|g0(T0 f0)| must exceed 1 - eta", att);
}

// ---------------------------------------------------------------------------
// pipeline stages

template <Scalar S>
struct PhaseRotation {
    RepOperator<S> T0;
    S lambda0{1.0};
};

/// lambda0 = conj(u)/|u| with u = g0(T0 f0), so that Re g0(lambda0 T0 f0) = |u|.
template <Scalar S>
PhaseRotation<S> rotate_phase(const CorrectionInput<S>& in)
{
    const S u = pairing(in.g0, bpbnu::apply(in.T0, in.f0));
    if (std::abs(u) == 0.0)
        throw precondition_error("rotate_phase: g0(T0 f0) is zero");
    PhaseRotation<S> r;
    r.lambda0 = conj(u) / std::abs(u);
    r.T0 = r.lambda0 * in.T0;
    return r;
}

template <Scalar S>
struct Blocks {
    std::vector<AtomSet> blocks;
    std::vector<S> alpha; ///< f0 = sum_k alpha_k chi_{D_k} / mu(D_k)
    std::vector<S> gamma; ///< g0 = gamma_k on D_k

    std::size_t size() const noexcept { return blocks.size(); }
};

namespace detail {

template <Scalar S>
double l1_distance(const L1Fn<S>& a, const L1Fn<S>& b)
{
    const auto& sp = *a.space();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(a[i] - b[i]) * sp.weight(i);
    return acc;
}

inline std::string at_block(std::size_t k) { return "k=" + std::to_string(k); }

inline std::string at_block_atom(std::size_t k, std::size_t t)
{
    return "k=" + std::to_string(k) + ",t=" + std::to_string(t);
}

} // namespace detail

/// Greedy partition of the atoms: in index order, an atom joins the first block
/// whose atoms share its f0 and g0 values exactly and whose kernel columns all
/// lie within `eta` of its own in L1 norm; otherwise it opens a new block.
template <Scalar S>
Blocks<S> build_blocks(const L1Fn<S>& f0, const LInfFn<S>& g0, const Kernel<S>& h0, double eta)
{
    require_same_space(f0.space(), g0.space());
    require_same_space(f0.space(), h0.space());
    const auto& sp = *f0.space();
    const std::size_t n = sp.size();

    std::vector<std::vector<std::size_t>> members;
    for (std::size_t t = 0; t < n; ++t) {
        bool placed = false;
        for (auto& block : members) {
            const std::size_t rep = block.front();
            if (f0[t] != f0[rep] || g0[t] != g0[rep])
                continue;
            const bool close = std::all_of(block.begin(), block.end(), [&](std::size_t s) {
                return detail::l1_distance(h0.column(s), h0.column(t)) <= eta;
            });
            if (close) {
                block.push_back(t);
                placed = true;
                break;
            }
        }
        if (!placed)
            members.push_back({t});
    }

    Blocks<S> out;
    for (auto& m : members) {
        S a{0.0};
        for (auto t : m)
            a += f0[t] * sp.weight(t);
        out.alpha.push_back(a);
        out.gamma.push_back(g0[m.front()]);
        out.blocks.emplace_back(n, std::move(m));
    }
    return out;
}

template <Scalar S>
struct Truncation {
    std::vector<std::size_t> F; ///< block ids in selection order
    std::vector<S> beta;        ///< parallel to F
    L1Fn<S> f2;
};

/// Smallest prefix F of the blocks ordered by decreasing |alpha_k| (ties by id,
/// zero-alpha blocks never taken) with sum_F |alpha_k| > 1 - eta,
/// Re g1(sum_F alpha_k chi_k/mu_k) > 1 - eta and Re g1(T0 sum_F alpha_k chi_k/mu_k) > 1 - eta.
template <Scalar S>
Truncation<S> truncate_support(const Blocks<S>& b, const L1Fn<S>& f1, const LInfFn<S>& g1, const RepOperator<S>& T0,
                               double eta, BoundLog& log)
{
    const auto& space = f1.space();
    const auto& sp = *space;
    const std::size_t nb = b.size();

    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < nb; ++k)
        if (b.alpha[k] != S{0.0})
            order.push_back(k);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return std::abs(b.alpha[x]) > std::abs(b.alpha[y]); });

    // g1(T0(chi_{D_k}/mu(D_k))) per block
    auto block_image = [&](std::size_t k) {
        const double m = b.blocks[k].mass(sp);
        S acc{0.0};
        for (auto t : b.blocks[k])
            acc += pairing(g1, T0.kernel().column(t)) * (sp.weight(t) / m);
        return acc;
    };

    double mass = 0.0;
    S on_f{0.0}, on_Tf{0.0};
    std::size_t taken = 0;
    bool found = false;
    for (; taken < order.size();) {
        const std::size_t k = order[taken++];
        mass += std::abs(b.alpha[k]);
        on_f += b.alpha[k] * b.gamma[k];
        on_Tf += b.alpha[k] * block_image(k);
        if (mass > 1.0 - eta && re(on_f) > 1.0 - eta && re(on_Tf) > 1.0 - eta) {
            found = true;
            break;
        }
    }
    if (!found) {
        const bool first_ok = mass > 1.0 - eta && re(on_f) > 1.0 - eta;
        throw invariant_error(first_ok ? "g1-T0-sum-F" : "sum-F-alpha", "no finite block set F satisfies the truncation bounds");
    }

    Truncation<S> tr;
    tr.F.assign(order.begin(), order.begin() + std::ptrdiff_t(taken));

    L1Fn<S> partial(space);
    double sum_abs = 0.0;
    for (auto k : tr.F) {
        partial += b.alpha[k] * normalized_indicator<S>(space, b.blocks[k]);
        sum_abs += std::abs(b.alpha[k]);
    }
    log.check("sum-F-alpha", sum_abs, Relation::greater, 1.0 - eta, "sum |alpha_k|");
    log.check("sum-F-alpha", re(pairing(g1, partial)), Relation::greater, 1.0 - eta, "Re g1(partial)");
    log.check("g1-T0-sum-F", re(pairing(g1, bpbnu::apply(T0, partial))), Relation::greater, 1.0 - eta);

    tr.f2 = L1Fn<S>(space);
    for (auto k : tr.F) {
        const S beta = b.alpha[k] / sum_abs;
        tr.beta.push_back(beta);
        tr.f2 += beta * normalized_indicator<S>(space, b.blocks[k]);
    }
    log.check("g1-f2", re(pairing(g1, tr.f2)), Relation::greater, 1.0 - eta);
    log.check("g1-T0-sum-F-norm", re(pairing(g1, bpbnu::apply(T0, tr.f2))), Relation::greater, 1.0 - eta);
    log.check("f2-f1", l1_norm(tr.f2 - f1), Relation::less, 2.0 * eta);
    return tr;
}

template <Scalar S>
struct Flattening {
    std::vector<std::size_t> anchors; ///< parallel to F
    std::vector<L1Fn<S>> psi;         ///< h0(t_k), parallel to F
    std::vector<L1Fn<S>> phi;         ///< psi_k / ||T1||, parallel to F
    RepOperator<S> T1;
    RepOperator<S> T2;
    double norm_T1 = 0.0;
};

/// Anchor t_k = heaviest atom of D_k (ties to the lowest index). T1 takes the
/// constant column psi_k = h0(t_k) on every D_k, k in F; T2 = T1 / ||T1||.
template <Scalar S>
Flattening<S> flatten_kernel(const RepOperator<S>& T0, const Blocks<S>& b, const Truncation<S>& tr,
                             const LInfFn<S>& g1, double eta, BoundLog& log)
{
    const auto& sp = *T0.space();
    Flattening<S> fl;
    Kernel<S> h1 = T0.kernel();
    for (auto k : tr.F) {
        std::size_t anchor = b.blocks[k].members().front();
        for (auto t : b.blocks[k])
            if (sp.weight(t) > sp.weight(anchor))
                anchor = t;
        fl.anchors.push_back(anchor);
        fl.psi.push_back(T0.kernel().column(anchor));
        for (auto t : b.blocks[k])
            h1.column(t) = fl.psi.back();
    }
    fl.T1 = RepOperator<S>(std::move(h1));
    log.check("T1-T0", operator_norm(fl.T1 - T0), Relation::less_equal, eta);

    fl.norm_T1 = operator_norm(fl.T1);
    if (fl.norm_T1 == 0.0)
        throw invariant_error("T1-T0", "flattened operator vanishes");
    fl.T2 = fl.T1 / S{fl.norm_T1};
    for (const auto& p : fl.psi)
        fl.phi.push_back(p / S{fl.norm_T1});

    log.check("T2-T0", operator_norm(fl.T2 - T0), Relation::less_equal, 2.0 * eta);
    log.check("g1-T2-f2", re(pairing(g1, bpbnu::apply(fl.T2, tr.f2))), Relation::greater, 1.0 - 3.0 * eta);
    return fl;
}

template <Scalar S>
struct Concentration {
    std::vector<std::size_t> G; ///< block ids
    std::vector<AtomSet> P;     ///< parallel to G
    std::vector<L1Fn<S>> varphi; ///< parallel to G
    Kernel<S> h3;
    RepOperator<S> T3;
    L1Fn<S> f3;
};

/// Keep the blocks G on which f2 and T2 f2 are both well aligned with g1,
/// rebuild f3 from them with phases matched to g1, and replace the kernel on
/// each such block by a unit function supported where phi_k is aligned with g1.
template <Scalar S>
Concentration<S> concentrate(const Blocks<S>& b, const Truncation<S>& tr, const Flattening<S>& fl,
                             const L1Fn<S>& f0, const LInfFn<S>& g1, const RepOperator<S>& T0,
                             const Thresholds& th, BoundLog& log)
{
    const auto& space = f0.space();
    const auto& sp = *space;
    const double eps = th.eps;

    // G through the sequence lemma with z_k = g1((chi_k/mu_k + phi_k)/2)
    std::vector<S> z;
    for (std::size_t i = 0; i < tr.F.size(); ++i)
        z.push_back((b.gamma[tr.F[i]] + pairing(g1, fl.phi[i])) / 2.0);
    const auto sel = select_B<S>(tr.beta, z, th.concentration);
    if (sel.selected.empty())
        throw invariant_error("sum-G", "block selection G is empty");
    log.check("sum-G", sel.mass, Relation::greater, 1.0 - th.concentration);

    Concentration<S> c;
    std::vector<std::size_t> gpos = sel.selected; // positions in F
    for (auto i : gpos)
        c.G.push_back(tr.F[i]);

    double sum_G = 0.0;
    for (auto i : gpos) {
        const std::size_t k = tr.F[i];
        const S beta = tr.beta[i];
        const S gamma = b.gamma[k];
        const auto at = detail::at_block(k);
        if (gamma == S{0.0})
            throw invariant_error("gamma-k-big", "gamma_k vanishes at " + at);
        log.check("gamma-k-big", std::abs(gamma), Relation::greater, 1.0 - th.block_gap, at);
        const double bg = std::abs(beta * gamma);
        log.check("beta-k-gamma-k", std::abs(beta - bg / gamma), Relation::less, th.alignment * std::abs(beta), at);
        log.check("beta-k-gamma-k", std::abs(gamma - bg / beta), Relation::less, th.alignment * std::abs(gamma), at);
        log.check("gamma-k-norm", std::abs(phase(gamma) - std::abs(beta) / beta), Relation::less, th.alignment, at);
        sum_G += std::abs(beta);
    }

    c.f3 = L1Fn<S>(space);
    for (auto i : gpos) {
        const std::size_t k = tr.F[i];
        const S coeff = std::abs(tr.beta[i] * b.gamma[k]) / b.gamma[k] / sum_G;
        c.f3 += coeff * normalized_indicator<S>(space, b.blocks[k]);
    }
    log.check("f3-f2", l1_norm(c.f3 - tr.f2), Relation::less_equal, eps / 8.0);
    log.check("f3-f0", l1_norm(c.f3 - f0), Relation::less, eps);

    for (auto i : gpos) {
        const std::size_t k = tr.F[i];
        const S beta = tr.beta[i];
        const auto& phi = fl.phi[i];
        const auto sel_c = select_C(L1Fn<S>(phase(beta) * phi), g1, th.alignment);
        AtomSet P(sp.size(), sel_c.selected);
        if (P.empty())
            throw invariant_error("int-Pk", "concentration set P_k is empty at " + detail::at_block(k));

        double mass = 0.0;
        for (auto t : P)
            mass += std::abs(phi[t]) * sp.weight(t);
        log.check("int-Pk", mass, Relation::greater, 1.0 - th.alignment, detail::at_block(k));

        L1Fn<S> vk(space);
        const S gphase = phase(b.gamma[k]);
        for (auto t : P) {
            if (g1[t] == S{0.0})
                throw invariant_error("phi-k-beta-k-g1", "g1 vanishes on P_k at " + detail::at_block_atom(k, t));
            const S w = beta * g1[t];
            log.check("phi-k-beta-k-g1", std::abs(phi[t] - std::abs(w * phi[t]) / w), Relation::less,
                      th.pointwise * std::abs(phi[t]), detail::at_block_atom(k, t));
            vk[t] = gphase * (std::abs(phi[t]) / mass) * conj(phase(g1[t]));
        }
        log.check("varphi-k-phi-k", l1_norm(vk - phi), Relation::less, eps / 2.0, detail::at_block(k));
        c.P.push_back(std::move(P));
        c.varphi.push_back(std::move(vk));
    }

    c.h3 = fl.T2.kernel();
    for (std::size_t j = 0; j < c.G.size(); ++j)
        for (auto t : b.blocks[c.G[j]])
            c.h3.column(t) = c.varphi[j];
    c.T3 = RepOperator<S>(c.h3);

    log.check("T3-T2", operator_norm(c.T3 - fl.T2), Relation::less_equal, eps / 2.0);
    log.check("T3-T0", operator_norm(c.T3 - T0), Relation::less, eps);
    return c;
}

template <Scalar S>
struct Unimodularization {
    AtomSet A;
    LInfFn<S> g2;
};

/// A = { t : |g1(t)| >= 1 - eps^2/2^7 }; g2 = g1/|g1| on A and g1 elsewhere.
template <Scalar S>
Unimodularization<S> unimodularize_functional(const LInfFn<S>& g1, const Blocks<S>& b, const std::vector<std::size_t>& G,
                                              const Thresholds& th, BoundLog& log)
{
    const std::size_t n = g1.size();
    std::vector<std::size_t> members;
    LInfFn<S> g2 = g1;
    for (std::size_t t = 0; t < n; ++t) {
        if (std::abs(g1[t]) >= 1.0 - th.alignment) {
            members.push_back(t);
            g2[t] = phase(g1[t]);
        }
    }
    Unimodularization<S> u{AtomSet(n, std::move(members)), std::move(g2)};
    log.check("g2-g1", linf_norm(u.g2 - g1), Relation::less_equal, th.alignment);
    for (auto k : G)
        if (!b.blocks[k].subset_of(u.A))
            throw invariant_error("g2-f3", "block " + detail::at_block(k) + " is not contained in A");
    return u;
}

// ---------------------------------------------------------------------------

template <Scalar S>
struct CorrectionTrace {
    EtaMode eta_mode = EtaMode::paper();
    Thresholds thresholds;
    S lambda0{1.0};
    Blocks<S> blocks;
    Truncation<S> truncation;
    Flattening<S> flattening;
    Concentration<S> concentration;
    Unimodularization<S> unimodularization;
    std::vector<BoundRecord> bounds;

    bool bounds_hold() const
    {
        return std::all_of(bounds.begin(), bounds.end(), [](const BoundRecord& r) { return r.holds; });
    }
};

template <Scalar S>
struct CorrectionResult {
    RepOperator<S> T3; ///< measured against the caller's T0 (rotation undone)
    L1Fn<S> f3;
    LInfFn<S> g2;
    CorrectionTrace<S> trace;
};

struct CorrectionOptions {
    /// Throw invariant_error at the first failed bound. When false the pipeline
    /// records failures and keeps going where it structurally can.
    bool enforce_bounds = true;
    /// Tolerance for the exact equalities g2(f3) = 1, g2(varphi_k) = phase(gamma_k), g2(T3 f3) = 1.
    double tolerance = default_verify_tolerance;
};

template <Scalar S>
CorrectionResult<S> correct(const CorrectionInput<S>& in, const CorrectionOptions& opt = {})
{
    validate(in);
    const Thresholds th = Thresholds::of(in.eps, in.eta_mode);
    const double eta = th.eta;
    const double eps = in.eps;
    BoundLog log(opt.enforce_bounds);

    CorrectionTrace<S> trace;
    trace.eta_mode = in.eta_mode;
    trace.thresholds = th;

    const auto rot = rotate_phase(in);
    trace.lambda0 = rot.lambda0;
    const RepOperator<S>& T0 = rot.T0;

    // the simple-function approximation is exact on atomic spaces
    const L1Fn<S>& f1 = in.f0;
    const LInfFn<S>& g1 = in.g0;
    log.check("F-aprox", l1_norm(f1 - in.f0), Relation::less, eps / 4.0, "||f1-f0||_1");
    log.check("F-aprox", linf_norm(g1 - in.g0), Relation::less, eps / 4.0, "||g1-g0||_inf");
    log.check("f1-f0-g1-g0", re(pairing(g1, f1)), Relation::greater, 1.0 - eta, "Re g1(f1)");
    log.check("f1-f0-g1-g0", re(pairing(g1, bpbnu::apply(T0, f1))), Relation::greater, 1.0 - eta, "Re g1(T0 f1)");
    log.check("norm-h0", std::abs(T0.kernel().sup_norm() - 1.0), Relation::less_equal, operator_norm_tolerance);

    trace.blocks = build_blocks(f1, g1, T0.kernel(), eta);
    const auto& b = trace.blocks;
    {
        double sum_abs = 0.0;
        double max_gamma = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            sum_abs += std::abs(b.alpha[k]);
            max_gamma = std::max(max_gamma, std::abs(b.gamma[k]));
            double osc = 0.0;
            const auto& m = b.blocks[k].members();
            for (std::size_t x = 0; x < m.size(); ++x)
                for (std::size_t y = x + 1; y < m.size(); ++y)
                    osc = std::max(osc, detail::l1_distance(T0.kernel().column(m[x]), T0.kernel().column(m[y])));
            log.check("osc-h0-Dk", osc, Relation::less_equal, eta, detail::at_block(k));
        }
        log.check("f1-g1", std::abs(sum_abs - 1.0), Relation::less_equal, unit_tolerance, "sum |alpha_k| = 1");
        log.check("f1-g1", max_gamma, Relation::less_equal, 1.0, "|gamma_k| <= 1");
    }

    trace.truncation = truncate_support(b, f1, g1, T0, eta, log);
    trace.flattening = flatten_kernel(T0, b, trace.truncation, g1, eta, log);
    trace.concentration = concentrate(b, trace.truncation, trace.flattening, in.f0, g1, T0, th, log);
    const auto& c = trace.concentration;
    trace.unimodularization = unimodularize_functional(g1, b, c.G, th, log);
    const auto& g2 = trace.unimodularization.g2;
    log.check("g2-g0", linf_norm(g2 - in.g0), Relation::less, eps);

    log.check("g2-f3", std::abs(pairing(g2, c.f3) - S{1.0}), Relation::less_equal, opt.tolerance);
    for (std::size_t j = 0; j < c.G.size(); ++j)
        log.check("g2-varphi-k", std::abs(pairing(g2, c.varphi[j]) - phase(b.gamma[c.G[j]])), Relation::less_equal,
                  opt.tolerance, detail::at_block(c.G[j]));
    log.check("g2-T3-f3", std::abs(pairing(g2, bpbnu::apply(c.T3, c.f3)) - S{1.0}), Relation::less_equal, opt.tolerance);

    trace.bounds = log.records();
    CorrectionResult<S> out{conj(rot.lambda0) * c.T3, c.f3, g2, std::move(trace)};
    return out;
}

// ---------------------------------------------------------------------------

/// Attainment certificate, recomputed from scratch from the output triple.
struct Certificate {
    double attain_pair = 0.0; ///< |g2(f3) - 1|
    double attain_op = 0.0;   ///< ||g2(T3 f3)| - 1|
    double nu_T3 = 0.0;
    double norm_f3 = 0.0;
    double norm_g2 = 0.0;
    double dist_f = 0.0; ///< ||f3 - f0||_1
    double dist_g = 0.0; ///< ||g2 - g0||_inf
    double dist_T = 0.0; ///< nu(T3 - T0)
    double eps = 0.0;
    double tolerance = default_verify_tolerance;
    std::string eta_mode;
    bool verdict = false;
    /// verdict in paper eta mode
    bool certified = false;
    std::vector<std::string> failures;
};

template <Scalar S>
Certificate verify(const RepOperator<S>& T3, const L1Fn<S>& f3, const LInfFn<S>& g2, const CorrectionInput<S>& in,
                   double tol = default_verify_tolerance)
{
    Certificate c;
    c.eps = in.eps;
    c.tolerance = tol;
    c.eta_mode = in.eta_mode.str();
    const auto& sp = in.f0.space();
    if (!same_space(T3.space(), sp) || !same_space(f3.space(), sp) || !same_space(g2.space(), sp)
        || !same_space(in.T0.space(), sp) || !same_space(in.g0.space(), sp)) {
        c.failures.push_back("space");
        return c;
    }

    c.attain_pair = std::abs(pairing(g2, f3) - S{1.0});
    c.attain_op = std::abs(std::abs(pairing(g2, bpbnu::apply(T3, f3))) - 1.0);
    c.nu_T3 = numerical_radius(T3);
    c.norm_f3 = l1_norm(f3);
    c.norm_g2 = linf_norm(g2);
    c.dist_f = l1_norm(f3 - in.f0);
    c.dist_g = linf_norm(g2 - in.g0);
    c.dist_T = numerical_radius(T3 - in.T0);

    auto need = [&](bool ok, const char* name) {
        if (!ok)
            c.failures.push_back(name);
    };
    need(c.attain_pair <= tol, "attain_pair");
    need(c.attain_op <= tol, "attain_op");
    need(std::abs(c.nu_T3 - 1.0) <= tol, "nu_T3");
    need(std::abs(c.norm_f3 - 1.0) <= tol, "norm_f3");
    need(std::abs(c.norm_g2 - 1.0) <= tol, "norm_g2");
    need(c.dist_f < in.eps, "dist_f");
    need(c.dist_g < in.eps, "dist_g");
    need(c.dist_T < in.eps, "dist_T");
    c.verdict = c.failures.empty();
    c.certified = c.verdict && in.eta_mode.is_paper();
    return c;
}

template <Scalar S>
Certificate verify(const CorrectionResult<S>& r, const CorrectionInput<S>& in, double tol = default_verify_tolerance)
{
    return verify(r.T3, r.f3, r.g2, in, tol);
}

} // namespace bpbnu
