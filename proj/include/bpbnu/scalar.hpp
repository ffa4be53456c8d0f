#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace bpbnu {

enum class Field { real, complex };

inline std::string_view to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field parse_field(std::string_view s)
{
    if (s == "real")
        return Field::real;
    if (s == "complex")
        return Field::complex;
    throw parse_error("unknown field '" + std::string(s) + "' (expected real|complex)");
}

template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, std::complex<double>>;

template <Scalar S>
inline constexpr bool is_complex_v = std::same_as<S, std::complex<double>>;

template <Scalar S>
inline constexpr Field field_of = is_complex_v<S> ? Field::complex : Field::real;

// std::conj(double) returns a complex, so the real case is spelled out.
template <Scalar S>
S conj(S z)
{
    if constexpr (is_complex_v<S>)
        return std::conj(z);
    else
        return z;
}

template <Scalar S>
double re(S z)
{
    return std::real(z);
}

template <Scalar S>
double im(S z)
{
    if constexpr (is_complex_v<S>)
        return z.imag();
    else
        return 0.0;
}

template <Scalar S>
double modulus(S z)
{
    return std::abs(z);
}

/// z/|z|; zero maps to zero.
template <Scalar S>
S phase(S z)
{
    const double m = std::abs(z);
    return m == 0.0 ? S{0.0} : z / m;
}

/// Equispaced unimodular scalars: {+1,-1} for the real field, `count`
/// roots of unity for the complex field.
template <Scalar S>
std::vector<S> phase_grid(std::size_t count = 64)
{
    std::vector<S> grid;
    if constexpr (is_complex_v<S>) {
        grid.reserve(count);
        for (std::size_t k = 0; k < count; ++k)
            grid.push_back(std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(count)));
    } else {
        grid = {1.0, -1.0};
    }
    return grid;
}

} // namespace bpbnu
