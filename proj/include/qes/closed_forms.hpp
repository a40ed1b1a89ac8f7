#pragma once

/**
 * \file
 * \brief Closed-form QES potentials and zero-energy wavefunctions on rho > 0.
 *
 * All three potentials share the centrifugal-like tail -(tau/4)(tau/2 - 1)/rho^2
 * and a C / (rho^2 (rho + 1)^2) term. Two candidate values of C are in
 * circulation: k(k-1) and k(k-1)/2 = -(E_T + 1/4)/2. The active Convention
 * picks one; the radial-residual calibrator in verify.hpp shows that only
 * Convention::chain solves the radial equation.
 */

#include <qes/diffkit.hpp>
#include <qes/errors.hpp>
#include <qes/params.hpp>
#include <qes/so21.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace qes {

enum class Convention {
    paper, ///< C = k(k-1)
    chain, ///< C = -(E_T + 1/4)/2 = k(k-1)/2
};

inline std::string_view to_string(Convention c) { return c == Convention::paper ? "C_paper" : "C_chain"; }

/// Coefficient of 1/(rho^2 (rho+1)^2) under the given convention.
inline double c_coefficient(double k, Convention c)
{
    double const paper = k * (k - 1.0);
    return c == Convention::paper ? paper : 0.5 * paper;
}

struct CoeffsI {
    double A;
    double B;
    double C_paper;
    double C_chain;
};

inline CoeffsI coeffs_classI(double k, double b, double m)
{
    return {0.5 * (4.0 * (m * m - b * b) - 1.0), 2.0 * m * b, c_coefficient(k, Convention::paper),
            c_coefficient(k, Convention::chain)};
}

/// Closed-form potential. Defaults to the convention that solves the radial equation.
inline double potential(QesParams const& p, double rho, Convention conv = Convention::chain)
{
    require_qes_class(p);
    require_positive_rho(rho, "potential");
    double const m = p.m_or_k();
    double const b = p.b;
    double const r1 = rho + 1.0;
    double const tail = 0.25 * p.tau * (0.5 * p.tau - 1.0) / (rho * rho);
    double const c_term = c_coefficient(p.k, conv) / (rho * rho * r1 * r1);

    switch (p.cls) {
    case AlgebraClass::I: {
        auto const c = coeffs_classI(p.k, b, m);
        double const q = 2.0 * rho * rho + 2.0 * rho + 1.0;
        return -c.A / (q * q) - c.B * (2.0 * rho + 1.0) / (rho * r1 * q * q) + c_term - tail;
    }
    case AlgebraClass::II_PLUS:
        return b * b / (2.0 * std::pow(r1, 4)) - m * b / (rho * r1 * r1 * r1) + c_term - tail;
    case AlgebraClass::III: {
        double const s = 2.0 * rho + 1.0;
        return (4.0 * (m + b) * (m + b) - 1.0) / (2.0 * s * s) - 2.0 * m * b / (rho * r1) + c_term - tail;
    }
    case AlgebraClass::II_MINUS: break;
    }
    throw ParameterError("potential: unsupported class");
}

/// Explicit zero-energy wavefunction (unnormalized), generic over double / Jet.
template <typename T> T wavefunction(QesParams const& p, T const& rho)
{
    using std::atan;
    using std::exp;
    using std::sqrt;
    require_qes_class(p);
    require_m_equals_k(p);
    require_positive_rho(primal(rho), "wavefunction");

    double const power = p.k - 0.5;
    double const b = p.b;
    double const b_scale = (b == 0.0) ? 1.0 : pow(b, power);
    T const rr1 = rho * (rho + 1.0);
    T const common = sqrt(rr1) * pow(rho, -0.5 * p.tau);

    switch (p.cls) {
    case AlgebraClass::I: {
        T const q = 2.0 * rr1 + 1.0;
        return std::pow(2.0, power) * b_scale * common * pow(rr1 / q, power) *
               exp(b * atan((2.0 * rho + 1.0) / (2.0 * rr1)));
    }
    case AlgebraClass::II_PLUS: {
        T const ratio = rho / (rho + 1.0);
        return b_scale * common * exp(-b * ratio) * pow(ratio, power);
    }
    case AlgebraClass::III: {
        T const s = 2.0 * rho + 1.0;
        return std::pow(2.0, power) * b_scale * common * pow(1.0 / s, b) * pow(rr1 / s, power);
    }
    case AlgebraClass::II_MINUS: break;
    }
    throw ParameterError("wavefunction: unsupported class");
}

/// |psi|^2.
inline double density(QesParams const& p, double rho)
{
    double const psi = wavefunction(p, rho);
    return psi * psi;
}

namespace closed_detail {

/// log(1 + e^x) without overflow.
inline double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

/// log(1 + c rho) for rho = e^L, c > 0.
inline double log1p_scaled(double L, double c) { return softplus(L + std::log(c)); }

} // namespace closed_detail

/**
 * log |psi| as a function of log rho. Agrees with log|wavefunction| where
 * both are finite, and stays finite for rho far outside the range in which
 * psi itself is representable.
 */
inline double log_abs_wavefunction(QesParams const& p, double log_rho)
{
    using closed_detail::log1p_scaled;
    using closed_detail::softplus;
    require_qes_class(p);
    require_m_equals_k(p);
    if (!has_real_power(p)) {
        throw DomainError("log_abs_wavefunction: G^{k-1/2} is not real for b <= 0 and non-integral k - 1/2");
    }
    double const L = log_rho;
    double const L1 = softplus(L); // log(rho + 1)
    double const rho = std::exp(L);
    double const power = p.k - 0.5;
    double const b = p.b;
    double const log_b = (b == 0.0) ? 0.0 : power * std::log(std::abs(b));
    double const common = 0.5 * (L + L1) - 0.5 * p.tau * L;
    constexpr double ln2 = 0.69314718055994530942;

    switch (p.cls) {
    case AlgebraClass::I: {
        // log(2 rho^2 + 2 rho + 1) and atan((2 rho + 1) / (2 rho (rho + 1)))
        double const log_q = rho > 1.0 ? ln2 + 2.0 * L + std::log1p(1.0 / rho + 0.5 / (rho * rho))
                                       : std::log1p(2.0 * rho * (rho + 1.0));
        double const arg = rho > 1.0 ? (1.0 + 0.5 / rho) / (rho + 1.0) : (2.0 * rho + 1.0) / (2.0 * rho * (rho + 1.0));
        return power * ln2 + log_b + common + power * (L + L1 - log_q) + b * std::atan(arg);
    }
    case AlgebraClass::II_PLUS:
        return log_b + common - b / (1.0 + 1.0 / rho) + power * (L - L1);
    case AlgebraClass::III: {
        double const log_s = log1p_scaled(L, 2.0); // log(2 rho + 1)
        return power * ln2 + log_b + common - b * log_s + power * (L + L1 - log_s);
    }
    case AlgebraClass::II_MINUS: break;
    }
    throw ParameterError("log_abs_wavefunction: unsupported class");
}

/// log |psi|^2 as a function of log rho.
inline double log_density(QesParams const& p, double log_rho) { return 2.0 * log_abs_wavefunction(p, log_rho); }

/// Leading large-rho behaviour psi ~ prefactor * rho^power.
struct TailBehavior {
    double power = 0.0;
    double prefactor = 0.0;
    /// Class II carries exp(-b rho/(rho+1)), which saturates to exp(-b).
    bool saturating_exponential = false;
};

struct AsymptoticExponents {
    double at_zero = 0.0; ///< psi ~ rho^{at_zero} as rho -> 0
    TailBehavior at_inf;

    double density_zero() const { return 2.0 * at_zero; }
    double density_tail() const { return 2.0 * at_inf.power; }
};

inline AsymptoticExponents asymptotic_exponents(QesParams const& p)
{
    require_qes_class(p);
    double const power = p.k - 0.5;
    double const b_scale = (p.b == 0.0 || !has_real_power(p)) ? 1.0 : std::pow(p.b, power);

    AsymptoticExponents e;
    e.at_zero = p.k - 0.5 * p.tau;
    switch (p.cls) {
    case AlgebraClass::I:
        e.at_inf = {1.0 - 0.5 * p.tau, b_scale, false};
        break;
    case AlgebraClass::II_PLUS:
        e.at_inf = {1.0 - 0.5 * p.tau, b_scale * std::exp(-p.b), true};
        break;
    case AlgebraClass::III:
        e.at_inf = {p.k - p.b - 0.5 * p.tau + 0.5, b_scale * std::pow(2.0, -p.b), false};
        break;
    case AlgebraClass::II_MINUS: break;
    }
    return e;
}

struct AdmissibilityReport {
    bool paper_regular = false;
    bool l2_normalizable = false;
    /// Square-integrability under the rho^tau dr measure (diagnostic only).
    bool weighted_l2_normalizable = false;
    std::vector<std::string> violated_constraints;
    double exponent_at_zero = 0.0;
    TailBehavior behavior_at_inf;
};

/**
 * Printed per-class constraints plus an independent L^2 verdict:
 *   I:   2k > tau, tau > 2
 *   II:  2k > tau, tau >= 4, b > 0
 *   III: 2k > tau, b > k - tau/2 + 1   ("normalization-convergence")
 * "real-power" is added whenever G^{k-1/2} would be complex.
 */
inline AdmissibilityReport admissibility(QesParams const& p)
{
    require_qes_class(p);
    auto const ex = asymptotic_exponents(p);

    AdmissibilityReport rep;
    rep.exponent_at_zero = ex.at_zero;
    rep.behavior_at_inf = ex.at_inf;

    auto& v = rep.violated_constraints;
    if (!(2.0 * p.k > p.tau)) v.emplace_back("2k>tau");
    switch (p.cls) {
    case AlgebraClass::I:
        if (!(p.tau > 2.0)) v.emplace_back("tau>2");
        break;
    case AlgebraClass::II_PLUS:
        if (!(p.tau >= 4.0)) v.emplace_back("tau>=4");
        if (!(p.b > 0.0)) v.emplace_back("b>0");
        break;
    case AlgebraClass::III:
        if (!(p.b > p.k - 0.5 * p.tau + 1.0)) v.emplace_back("normalization-convergence");
        break;
    case AlgebraClass::II_MINUS: break;
    }
    bool const real = has_real_power(p);
    if (!real) v.emplace_back("real-power");

    rep.paper_regular = v.empty();
    rep.l2_normalizable = real && ex.density_zero() > -1.0 && ex.density_tail() < -1.0;
    rep.weighted_l2_normalizable = real && ex.density_zero() + p.tau > -1.0 && ex.density_tail() + p.tau < -1.0;
    return rep;
}

} // namespace qes
