#pragma once

// Randomized property suites for the selection lemmas. Every generated instance
// satisfies the lemma's hypothesis by construction (it is re-checked; the rare
// rounding casualty is regenerated) and the suite counts conclusions.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rng.hpp"
#include "scalar_lemmas.hpp"

namespace bpbnu {

struct SuiteOutcome {
    std::string name;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t regenerated = 0;

    bool ok() const noexcept { return failed == 0 && passed == trials; }
};

namespace detail {

/// Mixes the aligned point `aligned` toward a random point `other` by a random
/// fraction of the largest step that keeps `1 - t * deficit > 1 - eps^2`.
inline double hypothesis_step(SplitMix64& rng, double deficit, double eps)
{
    if (deficit <= 0.0)
        return rng.uniform();
    return std::min(1.0, eps * eps / deficit) * rng.uniform();
}

} // namespace detail

/// Sequence lemma: Re sum beta_k z_k > 1 - eps^2  implies  sum_B |beta_k| > 1 - eps.
template <Scalar S>
SuiteOutcome sequence_lemma_suite(std::size_t trials, std::uint64_t seed)
{
    SuiteOutcome out{std::string("select_B/") + std::string(to_string(field_of<S>))};
    SplitMix64 rng(seed);
    while (out.trials < trials) {
        const std::size_t m = 1 + rng.below(20);
        const double eps = rng.uniform(0.01, 0.99);
        std::vector<S> beta(m), z(m);
        double total = 0.0;
        for (auto& b : beta) {
            b = rng.uniform() < 0.1 ? S{0.0} : random_in_disk<S>(rng);
            total += std::abs(b);
        }
        if (total == 0.0)
            continue;
        for (auto& b : beta)
            b /= total;

        std::vector<S> aligned(m), other(m);
        S other_sum{0.0};
        for (std::size_t k = 0; k < m; ++k) {
            aligned[k] = beta[k] == S{0.0} ? S{1.0} : conj(phase(beta[k]));
            other[k] = random_in_disk<S>(rng);
            other_sum += beta[k] * other[k];
        }
        const double t = detail::hypothesis_step(rng, 1.0 - re(other_sum), eps);
        for (std::size_t k = 0; k < m; ++k)
            z[k] = (1.0 - t) * aligned[k] + t * other[k];

        const auto r = select_B<S>(beta, z, eps);
        if (!r.guarantee_applicable) {
            ++out.regenerated;
            continue;
        }
        ++out.trials;
        (r.conclusion_holds ? out.passed : out.failed) += 1;
    }
    return out;
}

/// Function lemma: Re g(f) > 1 - eps^2  implies  Re int_C f g dmu > 1 - eps.
template <Scalar S>
SuiteOutcome function_lemma_suite(std::size_t trials, std::uint64_t seed)
{
    SuiteOutcome out{std::string("select_C/") + std::string(to_string(field_of<S>))};
    SplitMix64 rng(seed);
    while (out.trials < trials) {
        const std::size_t n = 1 + rng.below(20);
        const double eps = rng.uniform(0.01, 0.99);
        std::vector<double> w(n);
        for (auto& x : w)
            x = rng.uniform(0.1, 10.0);
        const auto space = MeasureSpace::make(w);

        L1Fn<S> f(space);
        for (std::size_t i = 0; i < n; ++i)
            f[i] = rng.uniform() < 0.2 ? S{0.0} : random_in_disk<S>(rng);
        const double norm = l1_norm(f);
        if (norm == 0.0)
            continue;
        const double target = 1.0 - 0.5 * eps * eps * rng.uniform();
        f = f * S{target / norm};

        LInfFn<S> aligned(space), other(space);
        for (std::size_t i = 0; i < n; ++i) {
            aligned[i] = f[i] == S{0.0} ? random_phase<S>(rng) : conj(phase(f[i]));
            other[i] = random_in_disk<S>(rng);
        }
        const double on_aligned = re(pairing(aligned, f));
        const double on_other = re(pairing(other, f));
        // Re g(f) = on_aligned - t (on_aligned - on_other) must stay above 1 - eps^2
        const double slack = on_aligned - (1.0 - eps * eps);
        const double deficit = on_aligned - on_other;
        const double t = deficit <= 0.0 ? rng.uniform() : std::min(1.0, slack / deficit) * rng.uniform();
        const LInfFn<S> g = S{1.0 - t} * aligned + S{t} * other;

        const auto r = select_C(f, g, eps);
        if (!r.guarantee_applicable) {
            ++out.regenerated;
            continue;
        }
        ++out.trials;
        (r.conclusion_holds ? out.passed : out.failed) += 1;
    }
    return out;
}

/// Re z > (1-eps)|z|  implies  |z - |z|| < sqrt(2 eps)|z|, sampled in the complex plane.
inline SuiteOutcome modulus_lemma_suite(std::size_t trials, std::uint64_t seed)
{
    SuiteOutcome out{"modulus_alignment/complex"};
    SplitMix64 rng(seed);
    while (out.trials < trials) {
        const double eps = rng.uniform(1e-6, 1.0);
        if (eps <= 0.0 || eps >= 1.0)
            continue;
        const double max_angle = std::acos(1.0 - eps);
        const double r = std::exp(rng.uniform(-10.0, 10.0));
        const std::complex<double> z = std::polar(r, rng.uniform(-max_angle, max_angle));
        const auto a = modulus_alignment(z, eps);
        if (!a.holds) {
            ++out.regenerated;
            continue;
        }
        ++out.trials;
        (a.conclusion_holds ? out.passed : out.failed) += 1;
    }
    return out;
}

/// On an atomic space, select_C(f, g, eps) equals select_B with beta_t = f(t) mu_t
/// and z_t = g(t) whenever ||f||_1 = 1.
template <Scalar S>
SuiteOutcome atomwise_agreement_suite(std::size_t trials, std::uint64_t seed)
{
    SuiteOutcome out{std::string("select_C==select_B/") + std::string(to_string(field_of<S>))};
    SplitMix64 rng(seed);
    while (out.trials < trials) {
        const std::size_t n = 1 + rng.below(20);
        const double eps = rng.uniform(0.01, 0.99);
        std::vector<double> w(n);
        for (auto& x : w)
            x = rng.uniform(0.1, 10.0);
        const auto space = MeasureSpace::make(w);
        L1Fn<S> f(space);
        LInfFn<S> g(space);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = rng.uniform() < 0.2 ? S{0.0} : random_in_disk<S>(rng);
            g[i] = random_in_disk<S>(rng);
        }
        const double norm = l1_norm(f);
        if (norm == 0.0)
            continue;
        f = f / S{norm};
        std::vector<S> beta(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            beta[i] = f[i] * w[i];
            z[i] = g[i];
        }
        ++out.trials;
        const bool same = select_C(f, g, eps).selected == select_B<S>(beta, z, eps).selected;
        (same ? out.passed : out.failed) += 1;
    }
    return out;
}

/// Everything the `lemmas` command runs: 10^4 instances per field for each of the
/// two selection lemmas and the agreement check, 10^5 for modulus alignment.
inline std::vector<SuiteOutcome> run_lemma_suites(std::uint64_t seed, std::size_t base_trials = 10000)
{
    SplitMix64 seeds(seed);
    return {sequence_lemma_suite<double>(base_trials, seeds()),
            sequence_lemma_suite<std::complex<double>>(base_trials, seeds()),
            function_lemma_suite<double>(base_trials, seeds()),
            function_lemma_suite<std::complex<double>>(base_trials, seeds()),
            modulus_lemma_suite(10 * base_trials, seeds()),
            atomwise_agreement_suite<double>(base_trials / 10, seeds()),
            atomwise_agreement_suite<std::complex<double>>(base_trials / 10, seeds())};
}

} // namespace bpbnu
