#pragma once

/**
 * \file
 * \brief Second-order Taylor jets and a central finite-difference oracle.
 *
 * A Jet2 carries (f, f', f'') at a point. Arithmetic and the elementary
 * functions below propagate the triple with the Leibniz and chain rules, so
 * any expression written generically over `T` yields exact (up to rounding)
 * first and second derivatives when instantiated with `Jet2<double>`.
 *
 * For g(u) applied to a jet u = (v, v1, v2):
 *     value = g(v)
 *     d1    = g'(v) v1
 *     d2    = g'(v) v2 + g''(v) v1^2
 */

#include <qes/errors.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

namespace qes {

template <std::floating_point Real> struct Jet2 {
    using value_type = Real;

    Real value{};
    Real d1{};
    Real d2{};

    constexpr Jet2() = default;
    constexpr Jet2(Real v) : value(v) {} // NOLINT: implicit lift of constants
    constexpr Jet2(Real v, Real first, Real second) : value(v), d1(first), d2(second) {}

    /// The independent variable at x: (x, 1, 0).
    static constexpr Jet2 variable(Real x) { return {x, Real(1), Real(0)}; }

    constexpr Jet2& operator+=(Jet2 const& o)
    {
        value += o.value;
        d1 += o.d1;
        d2 += o.d2;
        return *this;
    }
    constexpr Jet2& operator-=(Jet2 const& o)
    {
        value -= o.value;
        d1 -= o.d1;
        d2 -= o.d2;
        return *this;
    }
    constexpr Jet2& operator*=(Jet2 const& o)
    {
        Real const v = value * o.value;
        Real const a = d1 * o.value + value * o.d1;
        Real const b = d2 * o.value + Real(2) * d1 * o.d1 + value * o.d2;
        value = v;
        d1 = a;
        d2 = b;
        return *this;
    }
    constexpr Jet2& operator/=(Jet2 const& o)
    {
        // q = u / w  =>  q' = (u' - q w') / w,  q'' = (u'' - 2 q' w' - q w'') / w
        Real const q = value / o.value;
        Real const q1 = (d1 - q * o.d1) / o.value;
        Real const q2 = (d2 - Real(2) * q1 * o.d1 - q * o.d2) / o.value;
        value = q;
        d1 = q1;
        d2 = q2;
        return *this;
    }

    constexpr Jet2 operator-() const { return {-value, -d1, -d2}; }
    constexpr Jet2 operator+() const { return *this; }
};

using Jet = Jet2<double>;

template <typename T> struct is_jet : std::false_type {};
template <typename R> struct is_jet<Jet2<R>> : std::true_type {};
template <typename T> inline constexpr bool is_jet_v = is_jet<T>::value;

/// Value part of a double or a jet.
template <std::floating_point R> constexpr R primal(R x) { return x; }
template <std::floating_point R> constexpr R primal(Jet2<R> const& x) { return x.value; }

template <typename R> constexpr Jet2<R> operator+(Jet2<R> a, Jet2<R> const& b) { return a += b; }
template <typename R> constexpr Jet2<R> operator-(Jet2<R> a, Jet2<R> const& b) { return a -= b; }
template <typename R> constexpr Jet2<R> operator*(Jet2<R> a, Jet2<R> const& b) { return a *= b; }
template <typename R> constexpr Jet2<R> operator/(Jet2<R> a, Jet2<R> const& b) { return a /= b; }

template <typename R> constexpr Jet2<R> operator+(Jet2<R> a, R b) { a.value += b; return a; }
template <typename R> constexpr Jet2<R> operator+(R a, Jet2<R> b) { b.value += a; return b; }
template <typename R> constexpr Jet2<R> operator-(Jet2<R> a, R b) { a.value -= b; return a; }
template <typename R> constexpr Jet2<R> operator-(R a, Jet2<R> const& b) { return Jet2<R>{a - b.value, -b.d1, -b.d2}; }
template <typename R> constexpr Jet2<R> operator*(Jet2<R> const& a, R b) { return {a.value * b, a.d1 * b, a.d2 * b}; }
template <typename R> constexpr Jet2<R> operator*(R a, Jet2<R> const& b) { return b * a; }
template <typename R> constexpr Jet2<R> operator/(Jet2<R> const& a, R b) { return {a.value / b, a.d1 / b, a.d2 / b}; }
template <typename R> constexpr Jet2<R> operator/(R a, Jet2<R> const& b) { return Jet2<R>(a) / b; }

template <typename R> std::ostream& operator<<(std::ostream& os, Jet2<R> const& j)
{
    return os << "(" << j.value << ", " << j.d1 << ", " << j.d2 << ")";
}

namespace detail {

/// Apply a scalar function with known g(v), g'(v), g''(v).
template <typename R> constexpr Jet2<R> chain(Jet2<R> const& u, R g0, R g1, R g2)
{
    return {g0, g1 * u.d1, g1 * u.d2 + g2 * u.d1 * u.d1};
}

inline void require(bool ok, char const* primitive, double x)
{
    if (!ok) {
        throw DomainError(std::string(primitive) + ": argument " + std::to_string(x) + " outside domain");
    }
}

inline void require_nonzero(double x, char const* primitive)
{
    if (x == 0.0) {
        throw SingularityError(std::string(primitive) + ": singular at 0");
    }
}

} // namespace detail

// Scalar versions of the hyperbolic reciprocals so generic code can call them
// unqualified on both double and Jet2.

inline double sech(double x) { return 1.0 / std::cosh(x); }
inline double cosech(double x)
{
    detail::require_nonzero(x, "cosech");
    return 1.0 / std::sinh(x);
}
inline double coth(double x)
{
    detail::require_nonzero(x, "coth");
    return 1.0 / std::tanh(x);
}

template <typename R> Jet2<R> exp(Jet2<R> const& u)
{
    R const e = std::exp(u.value);
    return detail::chain(u, e, e, e);
}

template <typename R> Jet2<R> log(Jet2<R> const& u)
{
    detail::require(u.value > 0, "log", u.value);
    R const inv = R(1) / u.value;
    return detail::chain(u, std::log(u.value), inv, -inv * inv);
}

template <typename R> Jet2<R> sqrt(Jet2<R> const& u)
{
    detail::require(u.value > 0, "sqrt", u.value);
    R const s = std::sqrt(u.value);
    return detail::chain(u, s, R(0.5) / s, R(-0.25) / (s * u.value));
}

template <typename R> Jet2<R> sin(Jet2<R> const& u)
{
    R const s = std::sin(u.value);
    return detail::chain(u, s, std::cos(u.value), -s);
}

template <typename R> Jet2<R> cos(Jet2<R> const& u)
{
    R const c = std::cos(u.value);
    return detail::chain(u, c, -std::sin(u.value), -c);
}

template <typename R> Jet2<R> sinh(Jet2<R> const& u)
{
    R const s = std::sinh(u.value);
    return detail::chain(u, s, std::cosh(u.value), s);
}

template <typename R> Jet2<R> cosh(Jet2<R> const& u)
{
    R const c = std::cosh(u.value);
    return detail::chain(u, c, std::sinh(u.value), c);
}

template <typename R> Jet2<R> tanh(Jet2<R> const& u)
{
    R const t = std::tanh(u.value);
    R const s2 = R(1) - t * t;
    return detail::chain(u, t, s2, R(-2) * t * s2);
}

template <typename R> Jet2<R> sech(Jet2<R> const& u)
{
    R const s = R(1) / std::cosh(u.value);
    R const t = std::tanh(u.value);
    // sech' = -sech tanh, sech'' = sech (tanh^2 - sech^2)
    return detail::chain(u, s, -s * t, s * (t * t - s * s));
}

template <typename R> Jet2<R> coth(Jet2<R> const& u)
{
    detail::require_nonzero(u.value, "coth");
    R const c = R(1) / std::tanh(u.value);
    R const cs2 = R(1) - c * c; // -cosech^2
    return detail::chain(u, c, cs2, R(-2) * c * cs2);
}

template <typename R> Jet2<R> cosech(Jet2<R> const& u)
{
    detail::require_nonzero(u.value, "cosech");
    R const s = R(1) / std::sinh(u.value);
    R const c = R(1) / std::tanh(u.value);
    // cosech' = -cosech coth, cosech'' = cosech (coth^2 + cosech^2)
    return detail::chain(u, s, -s * c, s * (c * c + s * s));
}

template <typename R> Jet2<R> atan(Jet2<R> const& u)
{
    R const w = R(1) / (R(1) + u.value * u.value);
    return detail::chain(u, std::atan(u.value), w, R(-2) * u.value * w * w);
}

/// u^a for real a. Non-integer a needs u > 0.
template <typename R> Jet2<R> pow(Jet2<R> const& u, R a)
{
    if (a == R(0)) {
        return Jet2<R>(R(1));
    }
    bool const integral = std::floor(a) == a;
    detail::require(u.value > 0 || (integral && (u.value != 0 || a > 0)), "pow", u.value);
    R const p = std::pow(u.value, a);
    if (u.value == 0) {
        // Positive integral a at a zero base: derivatives of the monomial.
        R const g1 = (a == R(1)) ? R(1) : R(0);
        R const g2 = (a == R(2)) ? R(2) : R(0);
        return detail::chain(u, p, g1, g2);
    }
    R const g1 = a * p / u.value;
    R const g2 = a * (a - R(1)) * p / (u.value * u.value);
    return detail::chain(u, p, g1, g2);
}

/// Real power on plain doubles with the same domain rule as the jet version.
inline double pow(double u, double a)
{
    if (a != 0.0 && std::floor(a) != a) {
        detail::require(u > 0, "pow", u);
    }
    return std::pow(u, a);
}

/// f(x), f'(x), f''(x) for a callable written generically over jets.
template <typename F> Jet eval_jet2(F&& f, double x)
{
    return std::forward<F>(f)(Jet::variable(x));
}

struct FdDerivatives {
    double d1;
    double d2;
};

/// Default step for fd_derivatives.
inline constexpr double kDefaultFdStep = 1e-4;

/// Central differences (f(x+h)-f(x-h))/2h and (f(x+h)-2f(x)+f(x-h))/h^2.
template <typename F> FdDerivatives fd_derivatives(F&& f, double x, double h = kDefaultFdStep)
{
    if (!(h > 0)) {
        throw DomainError("fd_derivatives: step must be positive");
    }
    double const fp = f(x + h);
    double const f0 = f(x);
    double const fm = f(x - h);
    if (!std::isfinite(fp) || !std::isfinite(f0) || !std::isfinite(fm)) {
        throw EvaluationError("fd_derivatives: non-finite function value near x = " + std::to_string(x));
    }
    return {(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

/// One Richardson step on top of fd_derivatives: combines steps h and h/2
/// to cancel the O(h^2) truncation term.
template <typename F> FdDerivatives fd_derivatives_richardson(F&& f, double x, double h = kDefaultFdStep)
{
    auto const coarse = fd_derivatives(f, x, h);
    auto const fine = fd_derivatives(f, x, h / 2);
    return {(4 * fine.d1 - coarse.d1) / 3, (4 * fine.d2 - coarse.d2) / 3};
}

} // namespace qes
