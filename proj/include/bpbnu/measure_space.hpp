#pragma once

// Finite atomic measure spaces and the function spaces L1(mu), Linf(mu) over them.
//
// Atoms are indexed 0..n-1. An L1 function is stored by its values (densities)
// f(t_i); its norm is sum_i |f(t_i)| mu_i. The duality pairing of g in Linf with
// f in L1 is sum_i g(t_i) f(t_i) mu_i.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace bpbnu {

class MeasureSpace {
public:
    explicit MeasureSpace(std::vector<double> weights) : weights_(std::move(weights))
    {
        if (weights_.empty())
            throw precondition_error("measure space needs at least one atom");
        for (double w : weights_)
            if (!(w > 0.0) || !std::isfinite(w))
                throw precondition_error("atom weights must be finite and strictly positive");
    }

    static std::shared_ptr<const MeasureSpace> make(std::vector<double> weights)
    {
        return std::make_shared<const MeasureSpace>(std::move(weights));
    }

    static std::shared_ptr<const MeasureSpace> uniform(std::size_t n)
    {
        return make(std::vector<double>(n, 1.0));
    }

    std::size_t size() const noexcept { return weights_.size(); }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const noexcept { return weights_; }
    double total_mass() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

    bool is_unit_weight() const
    {
        return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
    }

    friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

private:
    std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline void require_same_space(const SpacePtr& a, const SpacePtr& b)
{
    if (!same_space(a, b))
        throw dimension_error("operands live on different measure spaces");
}

/// Subset of atom indices, kept sorted and unique.
class AtomSet {
public:
    AtomSet() = default;
    AtomSet(std::size_t n, std::vector<std::size_t> members) : n_(n), members_(std::move(members))
    {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (!members_.empty() && members_.back() >= n_)
            throw dimension_error("atom index out of range");
    }

    static AtomSet all(std::size_t n)
    {
        std::vector<std::size_t> m(n);
        std::iota(m.begin(), m.end(), std::size_t{0});
        return {n, std::move(m)};
    }

    std::size_t universe() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    AtomSet complement() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (!contains(i))
                out.push_back(i);
        return {n_, std::move(out)};
    }

    bool subset_of(const AtomSet& other) const
    {
        return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
    }

    double mass(const MeasureSpace& space) const
    {
        double m = 0.0;
        for (auto i : members_)
            m += space.weight(i);
        return m;
    }

    friend bool operator==(const AtomSet&, const AtomSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> members_;
};

struct l1_kind {};
struct linf_kind {};

/// Scalar-valued function on the atoms of a space. `Kind` fixes which norm
/// (and which role in the duality) the function carries.
template <Scalar S, class Kind>
class AtomFunction {
public:
    using scalar_type = S;

    AtomFunction() = default;
    explicit AtomFunction(SpacePtr space) : space_(std::move(space)), values_(space_->size(), S{0.0}) {}
    AtomFunction(SpacePtr space, std::vector<S> values) : space_(std::move(space)), values_(std::move(values))
    {
        if (values_.size() != space_->size())
            throw dimension_error("function has " + std::to_string(values_.size()) + " values, space has "
                                  + std::to_string(space_->size()) + " atoms");
    }

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const S> values() const noexcept { return values_; }
    const S& operator[](std::size_t i) const { return values_[i]; }
    S& operator[](std::size_t i) { return values_[i]; }

    AtomFunction& operator+=(const AtomFunction& o)
    {
        require_same_space(space_, o.space_);
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] += o.values_[i];
        return *this;
    }
    AtomFunction& operator-=(const AtomFunction& o)
    {
        require_same_space(space_, o.space_);
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] -= o.values_[i];
        return *this;
    }
    AtomFunction& operator*=(S s)
    {
        for (auto& v : values_)
            v *= s;
        return *this;
    }

    friend AtomFunction operator+(AtomFunction a, const AtomFunction& b) { return a += b; }
    friend AtomFunction operator-(AtomFunction a, const AtomFunction& b) { return a -= b; }
    friend AtomFunction operator*(S s, AtomFunction a) { return a *= s; }
    friend AtomFunction operator*(AtomFunction a, S s) { return a *= s; }
    friend AtomFunction operator/(AtomFunction a, S s) { return a *= (S{1.0} / s); }
    friend AtomFunction operator-(AtomFunction a) { return a *= S{-1.0}; }

    friend bool operator==(const AtomFunction& a, const AtomFunction& b)
    {
        return same_space(a.space_, b.space_) && a.values_ == b.values_;
    }

private:
    SpacePtr space_;
    std::vector<S> values_;
};

template <Scalar S>
using L1Fn = AtomFunction<S, l1_kind>;
template <Scalar S>
using LInfFn = AtomFunction<S, linf_kind>;

template <Scalar S>
double l1_norm(const L1Fn<S>& f)
{
    const auto& sp = *f.space();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += std::abs(f[i]) * sp.weight(i);
    return acc;
}

template <Scalar S>
double linf_norm(const LInfFn<S>& g)
{
    double m = 0.0;
    for (const auto& v : g.values())
        m = std::max(m, std::abs(v));
    return m;
}

/// g(f) = sum_i g(t_i) f(t_i) mu_i. Bilinear (no conjugation).
template <Scalar S>
S pairing(const LInfFn<S>& g, const L1Fn<S>& f)
{
    require_same_space(g.space(), f.space());
    const auto& sp = *f.space();
    S acc{0.0};
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += g[i] * f[i] * sp.weight(i);
    return acc;
}

template <Scalar S>
L1Fn<S> indicator(const SpacePtr& space, const AtomSet& a)
{
    if (a.universe() != space->size())
        throw dimension_error("atom set universe does not match space");
    L1Fn<S> out(space);
    for (auto i : a)
        out[i] = S{1.0};
    return out;
}

/// chi_A / mu(A): the unit-norm nonnegative density spread evenly over A.
template <Scalar S>
L1Fn<S> normalized_indicator(const SpacePtr& space, const AtomSet& a)
{
    const double m = a.mass(*space);
    if (m == 0.0)
        throw precondition_error("normalized indicator of an empty set");
    return indicator<S>(space, a) / S{m};
}

/// The surjective isometry f -> (f(t_i) mu_i)_i from L1(mu) onto L1 of the
/// unit-weight space of the same size. Its adjoint inverse on Linf leaves the
/// values untouched, so pairings are preserved.
class RescalingIsometry {
public:
    explicit RescalingIsometry(SpacePtr source) : source_(std::move(source)), target_(MeasureSpace::uniform(source_->size())) {}

    const SpacePtr& source() const noexcept { return source_; }
    const SpacePtr& target() const noexcept { return target_; }

    template <Scalar S>
    L1Fn<S> forward(const L1Fn<S>& f) const
    {
        require_same_space(f.space(), source_);
        std::vector<S> v(f.values().begin(), f.values().end());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] *= source_->weight(i);
        return {target_, std::move(v)};
    }

    template <Scalar S>
    L1Fn<S> inverse(const L1Fn<S>& f) const
    {
        require_same_space(f.space(), target_);
        std::vector<S> v(f.values().begin(), f.values().end());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] /= source_->weight(i);
        return {source_, std::move(v)};
    }

    /// (Phi^{-1})^t: functional on the source space -> functional on the target.
    template <Scalar S>
    LInfFn<S> transport_functional(const LInfFn<S>& g) const
    {
        require_same_space(g.space(), source_);
        return {target_, std::vector<S>(g.values().begin(), g.values().end())};
    }

    template <Scalar S>
    LInfFn<S> pull_back_functional(const LInfFn<S>& g) const
    {
        require_same_space(g.space(), target_);
        return {source_, std::vector<S>(g.values().begin(), g.values().end())};
    }

private:
    SpacePtr source_;
    SpacePtr target_;
};

inline RescalingIsometry rescaling_isometry(const SpacePtr& space) { return RescalingIsometry(space); }

} // namespace bpbnu
