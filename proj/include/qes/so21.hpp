#pragma once

/**
 * \file
 * \brief so(2,1) potential algebra: the (F, G) solution classes, the
 * one-parameter potential family V_m, and the ground states chi_0.
 *
 * Every (F, G) pair here satisfies F' = 1 - F^2 and G' = -F G. For such a
 * pair and m = k the function
 *     chi_0 = G^{k-1/2} exp(integral of G)
 * solves -chi_0'' + V_k chi_0 = -(k - 1/2)^2 chi_0, with
 *     V_m = (1/4 - m^2) F' + 2 m G' + G^2.
 */

#include <qes/diffkit.hpp>
#include <qes/errors.hpp>
#include <qes/grid.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qes {

enum class AlgebraClass { I, II_PLUS, II_MINUS, III };

inline std::string_view to_string(AlgebraClass c)
{
    switch (c) {
    case AlgebraClass::I: return "I";
    case AlgebraClass::II_PLUS: return "II";
    case AlgebraClass::II_MINUS: return "II_MINUS";
    case AlgebraClass::III: return "III";
    }
    return "?";
}

/// Accepts I, II (alias of II_PLUS), II_PLUS, II_MINUS, III.
inline std::optional<AlgebraClass> parse_algebra_class(std::string_view s)
{
    if (s == "I") return AlgebraClass::I;
    if (s == "II" || s == "II_PLUS") return AlgebraClass::II_PLUS;
    if (s == "II_MINUS") return AlgebraClass::II_MINUS;
    if (s == "III") return AlgebraClass::III;
    return std::nullopt;
}

struct AlgebraParams {
    AlgebraClass cls = AlgebraClass::I;
    double b = 1.0;
    double k = 1.0;
    std::optional<double> m; ///< J_0 eigenvalue; defaults to k

    double m_or_k() const { return m.value_or(k); }
};

/// E_T = -(k - 1/2)^2 for the D_k^+ representation.
inline double bound_energy(double k)
{
    if (!(k > 0.5)) {
        throw RepresentationError("bound_energy: k must exceed 1/2 (got " + std::to_string(k) + ")");
    }
    return -(k - 0.5) * (k - 0.5);
}

/// Casimir eigenvalue k(k-1).
inline double casimir(double k) { return k * (k - 1.0); }

namespace so21_detail {

inline void check_class_point(AlgebraClass cls, double x)
{
    if (cls == AlgebraClass::III && x == 0.0) {
        throw SingularityError("class III: coth/cosech singular at x = 0");
    }
}

} // namespace so21_detail

template <typename T> T F_eval(AlgebraClass cls, T const& x)
{
    using std::tanh;
    so21_detail::check_class_point(cls, primal(x));
    switch (cls) {
    case AlgebraClass::I: return tanh(x);
    case AlgebraClass::II_PLUS: return T(1.0);
    case AlgebraClass::II_MINUS: return T(-1.0);
    case AlgebraClass::III: return coth(x);
    }
    return T(0.0);
}

template <typename T> T G_eval(AlgebraClass cls, double b, T const& x)
{
    using std::exp;
    so21_detail::check_class_point(cls, primal(x));
    switch (cls) {
    case AlgebraClass::I: return b * sech(x);
    case AlgebraClass::II_PLUS: return b * exp(-x);
    case AlgebraClass::II_MINUS: return b * exp(x);
    case AlgebraClass::III: return b * cosech(x);
    }
    return T(0.0);
}

struct OdeDeviation {
    double max_dev_F = 0.0;
    double max_dev_G = 0.0;
};

/// Max over the grid of |F' - (1 - F^2)| and |G' + F G|, derivatives by jets.
inline OdeDeviation check_defining_odes(AlgebraClass cls, double b, std::span<double const> grid)
{
    OdeDeviation dev;
    for (double x : grid) {
        if (cls == AlgebraClass::III && x == 0.0) {
            throw SingularityError("check_defining_odes: class III grid contains the singular point x = 0");
        }
        auto const F = F_eval(cls, Jet::variable(x));
        auto const G = G_eval(cls, b, Jet::variable(x));
        dev.max_dev_F = std::max(dev.max_dev_F, std::abs(F.d1 - (1.0 - F.value * F.value)));
        dev.max_dev_G = std::max(dev.max_dev_G, std::abs(G.d1 + F.value * G.value));
    }
    return dev;
}

/// V_m(x) = (1/4 - m^2) F'(x) + 2 m G'(x) + G(x)^2.
inline double potential_Vm(AlgebraClass cls, double b, double m, double x)
{
    auto const F = F_eval(cls, Jet::variable(x));
    auto const G = G_eval(cls, b, Jet::variable(x));
    return (0.25 - m * m) * F.d1 + 2.0 * m * G.d1 + G.value * G.value;
}

/**
 * Unnormalized ground state chi_0(g) = G(g)^{k-1/2} h(g) with h = exp(int G):
 *   I:        h = exp(b atan(sinh g))
 *   II_PLUS:  h = exp(-b e^{-g})
 *   II_MINUS: h = exp(+b e^{g})
 *   III:      h = tanh(g/2)^b
 *
 * The b^{k-1/2} factor is dropped at b = 0 so the b -> 0 limit stays
 * nonzero (chi_0 is only defined up to scale).
 */
template <typename T> T ground_state_chi0(AlgebraClass cls, double b, double k, T const& g)
{
    using std::atan;
    using std::exp;
    using std::sinh;
    using std::tanh;
    so21_detail::check_class_point(cls, primal(g));

    double const power = k - 0.5;
    T shape{};
    T h{};
    switch (cls) {
    case AlgebraClass::I:
        shape = sech(g);
        h = exp(b * atan(sinh(g)));
        break;
    case AlgebraClass::II_PLUS:
        shape = exp(-g);
        h = exp(-b * exp(-g));
        break;
    case AlgebraClass::II_MINUS:
        shape = exp(g);
        h = exp(b * exp(g));
        break;
    case AlgebraClass::III:
        shape = cosech(g);
        h = pow(tanh(g * 0.5), b);
        break;
    }
    double const scale = (b == 0.0) ? 1.0 : pow(b, power);
    return scale * pow(shape, power) * h;
}

/// Relative residual of -chi_0'' + V_k chi_0 - E_T chi_0 at x, scaled by the
/// largest of the three terms.
inline double eigen_relation_residual(AlgebraClass cls, double b, double k, double x)
{
    auto const chi = ground_state_chi0(cls, b, k, Jet::variable(x));
    double const v = potential_Vm(cls, b, k, x);
    double const e = bound_energy(k);
    double const kinetic = -chi.d2;
    double const pot = v * chi.value;
    double const en = e * chi.value;
    double const scale = std::max({std::abs(kinetic), std::abs(pot), std::abs(en)});
    double const r = kinetic + pot - en;
    return scale == 0.0 ? std::abs(r) : std::abs(r) / scale;
}

/// Default x-grids: classes I/II on [-5, 5] (101 points), class III on [1e-2, 10].
inline std::vector<double> default_class_grid(AlgebraClass cls)
{
    if (cls == AlgebraClass::III) {
        return linspace(1e-2, 10.0, 101);
    }
    return linspace(-5.0, 5.0, 101);
}

} // namespace qes
