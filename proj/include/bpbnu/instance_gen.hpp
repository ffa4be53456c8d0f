#pragma once

// Seeded generators of valid correction inputs, and the eta sweep.
//
// Construction (all randomness from one SplitMix64 stream seeded with spec.seed):
//  1. weights uniform in [0.1, 10);
//  2. atoms grouped under prototypes (one per atom, or ~n/2 for clustered-blocks);
//  3. a random support of prototypes; f0 has random magnitude and phase sigma there,
//     g0 = conj(sigma) there and a random value of modulus <= 1 elsewhere;
//  4. every supported column is a unit, nonnegative-weight mix of conj(g0) on the
//     support atoms, rotated by a shared random phase c, so that g0(T0 f0) = c;
//  5. clones of a prototype reuse its data with kernel columns perturbed by at
//     most eta/8 per entry;
//  6. `defected` (and clustered-blocks with gap > 0) shrinks the column of the
//     heaviest supported atom by the factor 1 - gap.

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "correction.hpp"
#include "rng.hpp"

namespace bpbnu {

enum class Structure { attaining, defected, clustered_blocks };

inline std::string_view to_string(Structure s)
{
    switch (s) {
    case Structure::attaining: return "attaining";
    case Structure::defected: return "defected";
    case Structure::clustered_blocks: return "clustered-blocks";
    }
    return "?";
}

inline Structure parse_structure(std::string_view s)
{
    if (s == "attaining")
        return Structure::attaining;
    if (s == "defected")
        return Structure::defected;
    if (s == "clustered-blocks")
        return Structure::clustered_blocks;
    throw parse_error("unknown structure '" + std::string(s) + "'");
}

struct GenSpec {
    std::size_t n = 1;
    Field field = Field::real;
    double eps = 0.5;
    double gap = 0.0;
    std::uint64_t seed = 0;
    Structure structure = Structure::attaining;
    EtaMode eta_mode = EtaMode::paper();
};

template <Scalar S>
CorrectionInput<S> gen(const GenSpec& spec)
{
    if (spec.n < 1)
        throw precondition_error("gen: n must be at least 1");
    if (spec.field != field_of<S>)
        throw precondition_error("gen: spec field does not match the scalar type");
    if (!(spec.eps > 0.0 && spec.eps < 1.0))
        throw precondition_error("gen: eps must lie in (0,1)");
    const double eta = spec.eta_mode.value(spec.eps);
    if (!(spec.gap >= 0.0) || spec.gap >= eta)
        throw precondition_error("gen: infeasible spec, gap must lie in [0, eta)");
    if (spec.structure == Structure::attaining && spec.gap != 0.0)
        throw precondition_error("gen: attaining instances have gap 0");

    SplitMix64 rng(spec.seed);
    const std::size_t n = spec.n;

    std::vector<double> w(n);
    for (auto& x : w)
        x = rng.uniform(0.1, 10.0);
    const auto space = MeasureSpace::make(w);

    const std::size_t m = spec.structure == Structure::clustered_blocks ? std::max<std::size_t>(1, (n + 1) / 2) : n;
    std::vector<std::size_t> proto(n);
    for (std::size_t t = 0; t < n; ++t)
        proto[t] = t < m ? t : std::size_t(rng.below(m));

    // support: at least two prototypes when possible, so a second unit column
    // survives the defect
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = m; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    const std::size_t lo = std::min<std::size_t>(2, m);
    const std::size_t support_size = lo + std::size_t(rng.below(m - lo + 1));
    std::vector<bool> in_support(m, false);
    for (std::size_t i = 0; i < support_size; ++i)
        in_support[perm[i]] = true;

    std::vector<S> f_proto(m), g_proto(m), sigma(m);
    for (std::size_t p = 0; p < m; ++p) {
        if (in_support[p]) {
            sigma[p] = random_phase<S>(rng);
            f_proto[p] = rng.uniform(0.05, 1.0) * sigma[p];
            g_proto[p] = conj(sigma[p]);
        } else {
            // a quarter of the off-support atoms sit just below |g| = 1
            const double r = rng.uniform() < 0.25 ? 1.0 - 1e-3 * rng.uniform() : rng.uniform();
            g_proto[p] = r * random_phase<S>(rng);
        }
    }

    L1Fn<S> f0(space);
    LInfFn<S> g0(space);
    for (std::size_t t = 0; t < n; ++t) {
        f0[t] = f_proto[proto[t]];
        g0[t] = g_proto[proto[t]];
    }
    f0 = f0 / S{l1_norm(f0)};

    std::vector<std::size_t> support_atoms;
    for (std::size_t t = 0; t < n; ++t)
        if (in_support[proto[t]])
            support_atoms.push_back(t);

    const S c = random_phase<S>(rng);

    // prototype columns
    std::vector<L1Fn<S>> proto_col(m, L1Fn<S>(space));
    std::vector<std::vector<double>> proto_mix(m);
    for (std::size_t p = 0; p < m; ++p) {
        if (in_support[p]) {
            auto& r = proto_mix[p];
            r.assign(n, 0.0);
            bool any = false;
            for (auto l : support_atoms) {
                if (rng.uniform() < 0.5) {
                    r[l] = rng.uniform(0.1, 1.0);
                    any = true;
                }
            }
            if (!any)
                r[support_atoms[rng.below(support_atoms.size())]] = 1.0;
        } else {
            auto& col = proto_col[p];
            for (std::size_t i = 0; i < n; ++i)
                col[i] = random_in_disk<S>(rng);
            const double norm = l1_norm(col);
            if (norm > 0.0)
                col = col * S{rng.uniform(0.2, 0.95) / norm};
        }
    }

    auto aligned_column = [&](std::size_t p, const std::vector<double>& r) {
        double mass = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            mass += r[l] * space->weight(l);
        L1Fn<S> col(space);
        for (std::size_t l = 0; l < n; ++l)
            if (r[l] != 0.0)
                col[l] = (r[l] / mass) * conj(g0[l]) * c * conj(sigma[p]);
        return col;
    };

    std::vector<bool> seen(m, false);
    std::vector<L1Fn<S>> columns;
    columns.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t p = proto[t];
        const bool first = !seen[p];
        seen[p] = true;
        if (in_support[p]) {
            auto r = proto_mix[p];
            if (!first)
                for (auto& x : r)
                    x *= 1.0 + rng.uniform(-eta / 8.0, eta / 8.0);
            columns.push_back(aligned_column(p, r));
        } else {
            auto col = proto_col[p];
            if (!first)
                for (std::size_t i = 0; i < n; ++i)
                    col[i] *= 1.0 + rng.uniform(-eta / 8.0, eta / 8.0);
            columns.push_back(std::move(col));
        }
    }

    if (spec.gap > 0.0) {
        std::size_t heavy = support_atoms.front();
        for (auto t : support_atoms)
            if (std::abs(f0[t]) * space->weight(t) > std::abs(f0[heavy]) * space->weight(heavy))
                heavy = t;
        columns[heavy] *= S{1.0 - spec.gap};
    }

    CorrectionInput<S> in{RepOperator<S>(Kernel<S>(space, std::move(columns))), std::move(f0), std::move(g0), spec.eps,
                          spec.eta_mode};
    validate(in);
    return in;
}

// ---------------------------------------------------------------------------

struct SweepRow {
    double eps = 0.0;
    double eta_paper = 0.0;
    double eta_empirical = 0.0;
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

namespace detail {

template <Scalar S>
bool sweep_passes(const GenSpec& spec)
{
    try {
        const auto in = gen<S>(spec);
        CorrectionOptions opt;
        opt.enforce_bounds = false;
        const auto r = correct(in, opt);
        return verify(r, in).verdict;
    } catch (const invariant_error&) {
        return false;
    }
}

} // namespace detail

/// For each eps and trial: run a defected instance at gap eta_paper/2 in paper
/// mode, then walk the gaps eta_paper * 2^k upward in custom mode (eta' = 2 gap)
/// while verify() keeps passing. A trial's value is the last passing gap on the
/// ladder (0 if the paper-mode run fails); a row reports the minimum over trials.
template <Scalar S>
std::vector<SweepRow> sweep(const std::vector<double>& eps_grid, std::size_t n, std::size_t trials, std::uint64_t seed)
{
    if (trials < 1)
        throw precondition_error("sweep: trials must be positive");
    std::vector<SweepRow> rows;
    SplitMix64 seeds(seed);
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 1.0))
            throw precondition_error("sweep: eps grid values must lie in (0,1)");
        const double eta_paper = eta(eps);
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t trial = 0; trial < trials; ++trial) {
            GenSpec spec;
            spec.n = n;
            spec.field = field_of<S>;
            spec.eps = eps;
            spec.seed = seeds();
            spec.structure = Structure::defected;
            spec.gap = eta_paper / 2.0;
            double best = 0.0;
            if (detail::sweep_passes<S>(spec)) {
                for (double gap = eta_paper; 2.0 * gap < max_custom_eta; gap *= 2.0) {
                    spec.gap = gap;
                    spec.eta_mode = EtaMode::custom(2.0 * gap);
                    if (!detail::sweep_passes<S>(spec))
                        break;
                    best = gap;
                }
            }
            worst = std::min(worst, best);
        }
        rows.push_back({eps, eta_paper, worst, n, trials, seed});
    }
    return rows;
}

} // namespace bpbnu
