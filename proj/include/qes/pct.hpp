#pragma once

/**
 * \file
 * \brief Point canonical transformation rho = K(g) = 1 / (e^g - 1).
 *
 * Under Phi(rho) = f(rho) zeta(g(rho)) with the first-derivative coefficient
 * of the zeta equation set to zero, f^2 g' rho^tau is constant and the radial
 * E = 0 equation maps onto the so(2,1) Schroedinger equation in g. Solving
 * the matching relation for V gives the algebra-side potential
 *
 *     V = [ V_m(g) - E_T + Delta/2 - (tau/2)(tau/2 - 1) K'^2 / K^2 ] / (2 K'^2)
 *
 * where K' = dK/dg and Delta is the Schwarzian of K with respect to g.
 */

#include <qes/diffkit.hpp>
#include <qes/errors.hpp>
#include <qes/params.hpp>
#include <qes/so21.hpp>

#include <cmath>

namespace qes::pct {

/// rho = K(g) = 1 / (e^g - 1), g > 0.
template <typename T> T K(T const& g)
{
    using std::exp;
    if (!(primal(g) > 0.0)) {
        throw DomainError("K: g must be positive");
    }
    return 1.0 / (exp(g) - 1.0);
}

inline double K(double g)
{
    if (!(g > 0.0)) {
        throw DomainError("K: g must be positive");
    }
    return 1.0 / std::expm1(g);
}

/// Inverse mapping g = ln((rho + 1) / rho) > 0.
inline double g_of_rho(double rho)
{
    require_positive_rho(rho, "g_of_rho");
    return std::log1p(1.0 / rho);
}

template <typename T> T g_of_rho(T const& rho)
{
    using std::log;
    require_positive_rho(primal(rho), "g_of_rho");
    return log(1.0 + 1.0 / rho);
}

/// g'(rho) = -1 / (rho (rho + 1)), written generically so jets give g'' and g'''.
template <typename T> T dg_drho(T const& rho)
{
    return -1.0 / (rho * (rho + 1.0));
}

/// dK/dg evaluated at g = g_of_rho(rho): -rho (rho + 1).
inline double dK_dg(double rho) { return -rho * (rho + 1.0); }

/// Schwarzian g'''/g' - (3/2)(g''/g')^2 of any map whose first derivative
/// `dg` is supplied as a jet-generic callable.
template <typename DG> double schwarzian_of(DG&& dg, double x)
{
    auto const j = dg(Jet::variable(x)); // (g', g'', g''')
    double const r = j.d1 / j.value;
    return j.d2 / j.value - 1.5 * r * r;
}

/// Schwarzian of g_of_rho at rho; equals 1 / (2 rho^2 (rho + 1)^2).
inline double schwarzian(double rho)
{
    require_positive_rho(rho, "schwarzian");
    return schwarzian_of([](auto const& r) { return dg_drho(r); }, rho);
}

/// |g'|^{-1/2} rho^{-tau/2} = sqrt(rho (rho + 1)) rho^{-tau/2}.
template <typename T> T f_prefactor(T const& rho, double tau)
{
    using std::sqrt;
    require_positive_rho(primal(rho), "f_prefactor");
    return sqrt(rho * (rho + 1.0)) * pow(rho, -0.5 * tau);
}

/// Potential reconstructed from the algebra side at E = 0.
inline double algebra_side_potential(QesParams const& p, double rho)
{
    require_qes_class(p);
    require_positive_rho(rho, "algebra_side_potential");
    double const g = g_of_rho(rho);
    double const m = p.m_or_k();
    double const F = F_eval(p.cls, g);
    double const G = G_eval(p.cls, p.b, g);
    double const kp = dK_dg(rho);
    double const kp2 = kp * kp;
    // Schwarzian of K in g from the one of g in rho: {K; g} = -K'^2 {g; rho}.
    double const delta = -kp2 * schwarzian(rho);
    double const half_tau = 0.5 * p.tau;
    double const numerator = (0.25 - m * m) * (1.0 - F * F) - 2.0 * m * F * G + G * G - p.energy() + 0.5 * delta -
                             half_tau * (half_tau - 1.0) * kp2 / (rho * rho);
    return numerator / (2.0 * kp2);
}

/// f(rho) chi_0(g(rho)); proportional to the explicit wavefunctions.
template <typename T> T generic_wavefunction(QesParams const& p, T const& rho)
{
    require_qes_class(p);
    require_m_equals_k(p);
    return f_prefactor(rho, p.tau) * ground_state_chi0(p.cls, p.b, p.k, g_of_rho(rho));
}

} // namespace qes::pct
