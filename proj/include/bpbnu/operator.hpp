#pragma once

// Representable operators on L1(mu) of a finite atomic space.
//
// An operator is stored by its kernel h: atom -> L1(mu); T f = sum_j f(t_j) mu_j h(t_j).
// The kernel is the column list h(t_0), ..., h(t_{n-1}) and ||T|| = max_j ||h(t_j)||_1.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "measure_space.hpp"
#include "rng.hpp"

namespace bpbnu {

template <Scalar S>
class Kernel {
public:
    Kernel() = default;

    /// Zero kernel.
    explicit Kernel(SpacePtr space) : space_(std::move(space)), columns_(space_->size(), L1Fn<S>(space_)) {}

    Kernel(SpacePtr space, std::vector<L1Fn<S>> columns) : space_(std::move(space)), columns_(std::move(columns))
    {
        if (columns_.size() != space_->size())
            throw dimension_error("kernel needs one column per atom");
        for (const auto& c : columns_)
            require_same_space(c.space(), space_);
    }

    static Kernel identity(const SpacePtr& space)
    {
        Kernel k(space);
        for (std::size_t j = 0; j < space->size(); ++j)
            k.columns_[j][j] = S{1.0 / space->weight(j)};
        return k;
    }

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return columns_.size(); }
    const L1Fn<S>& column(std::size_t j) const { return columns_[j]; }
    L1Fn<S>& column(std::size_t j) { return columns_[j]; }
    const std::vector<L1Fn<S>>& columns() const noexcept { return columns_; }

    /// ||h||_inf = max_j ||h(t_j)||_1.
    double sup_norm() const
    {
        double m = 0.0;
        for (const auto& c : columns_)
            m = std::max(m, l1_norm(c));
        return m;
    }

    friend bool operator==(const Kernel& a, const Kernel& b)
    {
        return same_space(a.space_, b.space_) && a.columns_ == b.columns_;
    }

private:
    SpacePtr space_;
    std::vector<L1Fn<S>> columns_;
};

template <Scalar S>
class RepOperator {
public:
    RepOperator() = default;
    explicit RepOperator(Kernel<S> kernel) : kernel_(std::move(kernel)) {}

    static RepOperator identity(const SpacePtr& space) { return RepOperator(Kernel<S>::identity(space)); }
    static RepOperator zero(const SpacePtr& space) { return RepOperator(Kernel<S>(space)); }

    const Kernel<S>& kernel() const noexcept { return kernel_; }
    const SpacePtr& space() const noexcept { return kernel_.space(); }
    std::size_t size() const noexcept { return kernel_.size(); }

    RepOperator& operator+=(const RepOperator& o)
    {
        require_same_space(space(), o.space());
        for (std::size_t j = 0; j < size(); ++j)
            kernel_.column(j) += o.kernel_.column(j);
        return *this;
    }
    RepOperator& operator-=(const RepOperator& o)
    {
        require_same_space(space(), o.space());
        for (std::size_t j = 0; j < size(); ++j)
            kernel_.column(j) -= o.kernel_.column(j);
        return *this;
    }
    RepOperator& operator*=(S s)
    {
        for (std::size_t j = 0; j < size(); ++j)
            kernel_.column(j) *= s;
        return *this;
    }

    friend RepOperator operator+(RepOperator a, const RepOperator& b) { return a += b; }
    friend RepOperator operator-(RepOperator a, const RepOperator& b) { return a -= b; }
    friend RepOperator operator*(S s, RepOperator a) { return a *= s; }
    friend RepOperator operator/(RepOperator a, S s) { return a *= (S{1.0} / s); }

    friend bool operator==(const RepOperator&, const RepOperator&) = default;

private:
    Kernel<S> kernel_;
};

/// T f = sum_j f(t_j) mu_j h(t_j).
template <Scalar S>
L1Fn<S> apply(const RepOperator<S>& T, const L1Fn<S>& f)
{
    require_same_space(T.space(), f.space());
    const auto& sp = *T.space();
    L1Fn<S> out(T.space());
    for (std::size_t j = 0; j < T.size(); ++j) {
        const S c = f[j] * sp.weight(j);
        if (c == S{0.0})
            continue;
        const auto& col = T.kernel().column(j);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += c * col[i];
    }
    return out;
}

template <Scalar S>
double operator_norm(const RepOperator<S>& T)
{
    return T.kernel().sup_norm();
}

/// nu(T). L1(mu) has numerical index 1, so the numerical radius coincides
/// with the operator norm; `nu_lower_bound` checks this independently.
template <Scalar S>
double numerical_radius(const RepOperator<S>& T)
{
    return operator_norm(T);
}

namespace detail {

template <Scalar S>
S grid_best(const std::vector<S>& grid, S target)
{
    // argmax_w Re(w * target) over the grid
    S best = grid.front();
    double best_val = re(best * target);
    for (const auto& w : grid) {
        const double v = re(w * target);
        if (v > best_val) {
            best_val = v;
            best = w;
        }
    }
    return best;
}

} // namespace detail

/// Lower bound for nu(T) from explicit state pairs (f, g) with ||f||_1 = 1,
/// ||g||_inf = 1, g(f) = 1: max |g(T f)| over
///  * every extreme pair f = sigma chi_{t_i}/mu_i, sigma on the phase grid,
///    g(t_i) = 1/sigma and g elsewhere either the grid phase or the exact phase
///    best aligned with the atom-i term of g(T f);
///  * `samples` random pairs: f a random convex combination of extreme points,
///    g the conjugate phase of f on supp f and random grid phases elsewhere.
template <Scalar S>
double nu_lower_bound(const RepOperator<S>& T, std::size_t samples, std::uint64_t seed, std::size_t grid_size = 64)
{
    if (samples < 1)
        throw precondition_error("nu_lower_bound needs at least one sample");
    const auto& space = T.space();
    const std::size_t n = T.size();
    const auto grid = phase_grid<S>(grid_size);
    double best = 0.0;

    auto evaluate = [&](const LInfFn<S>& g, const L1Fn<S>& f) { best = std::max(best, std::abs(pairing(g, bpbnu::apply(T, f)))); };

    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& sigma : grid) {
            L1Fn<S> f(space);
            f[i] = sigma / space->weight(i);
            const L1Fn<S> Tf = bpbnu::apply(T, f);
            // anchor term of g(Tf) contributed by atom i
            const S anchor = conj(sigma) * Tf[i] * space->weight(i);
            const S dir = anchor == S{0.0} ? S{1.0} : phase(anchor);

            LInfFn<S> g_grid(space), g_exact(space);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    g_grid[j] = g_exact[j] = conj(sigma);
                    continue;
                }
                // want g_j Tf_j aligned with dir
                const S target = conj(dir) * Tf[j];
                g_grid[j] = detail::grid_best(grid, target);
                g_exact[j] = target == S{0.0} ? S{1.0} : conj(phase(target));
            }
            evaluate(g_grid, f);
            evaluate(g_exact, f);
        }
    }

    SplitMix64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        L1Fn<S> f(space);
        LInfFn<S> g(space);
        double total = 0.0;
        std::vector<double> c(n);
        for (auto& x : c) {
            x = (rng.uniform() < 0.5) ? 0.0 : rng.uniform();
            total += x;
        }
        if (total == 0.0) {
            c[rng.below(n)] = 1.0;
            total = 1.0;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const S sigma = grid[rng.below(grid.size())];
            if (c[j] > 0.0) {
                f[j] = sigma * (c[j] / total) / space->weight(j);
                g[j] = conj(sigma);
            } else {
                g[j] = grid[rng.below(grid.size())];
            }
        }
        evaluate(g, f);
    }
    return best;
}

/// T|_A f = T(f chi_A): keeps columns on A, zeroes the rest.
template <Scalar S>
RepOperator<S> restrict(const RepOperator<S>& T, const AtomSet& a)
{
    if (a.universe() != T.size())
        throw dimension_error("atom set universe does not match operator");
    Kernel<S> k(T.space());
    for (auto j : a)
        k.column(j) = T.kernel().column(j);
    return RepOperator<S>(std::move(k));
}

/// Phi o T o Phi^{-1} on the unit-weight space. Column j becomes Phi h(t_j).
template <Scalar S>
RepOperator<S> conjugate(const RepOperator<S>& T, const RescalingIsometry& phi)
{
    require_same_space(T.space(), phi.source());
    std::vector<L1Fn<S>> cols;
    cols.reserve(T.size());
    for (const auto& c : T.kernel().columns())
        cols.push_back(phi.forward(c));
    return RepOperator<S>(Kernel<S>(phi.target(), std::move(cols)));
}

/// Inverse transport Phi^{-1} o T o Phi back onto the source space.
template <Scalar S>
RepOperator<S> conjugate_back(const RepOperator<S>& T, const RescalingIsometry& phi)
{
    require_same_space(T.space(), phi.target());
    std::vector<L1Fn<S>> cols;
    cols.reserve(T.size());
    for (const auto& c : T.kernel().columns())
        cols.push_back(phi.inverse(c));
    return RepOperator<S>(Kernel<S>(phi.source(), std::move(cols)));
}

} // namespace bpbnu
