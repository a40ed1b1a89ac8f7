#pragma once

#include <qes/errors.hpp>
#include <qes/so21.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace qes {

/// One QES potential / zero-energy wavefunction pair.
struct QesParams {
    AlgebraClass cls = AlgebraClass::I;
    double k = 1.0;
    double b = 1.0;
    double tau = 0.0;
    std::optional<double> m; ///< defaults to k

    double m_or_k() const { return m.value_or(k); }
    double energy() const { return bound_energy(k); }
};

/// True when G^{k-1/2} is real for every sign of G: b > 0, or k - 1/2 integral.
inline bool has_real_power(QesParams const& p)
{
    double const power = p.k - 0.5;
    return p.b > 0.0 || std::floor(power) == power;
}

/// Structural checks shared by every closed-form evaluator.
inline void require_qes_class(QesParams const& p)
{
    if (p.cls == AlgebraClass::II_MINUS) {
        throw ParameterError("QES closed forms use the II (F = +1) branch; II_MINUS is not supported");
    }
    if (!(p.k > 0.5)) {
        throw RepresentationError("k must exceed 1/2 (got " + std::to_string(p.k) + ")");
    }
}

/// Wavefunctions exist only on the m = k line.
inline void require_m_equals_k(QesParams const& p)
{
    if (p.m && *p.m != p.k) {
        throw ParameterError("wavefunctions are defined for m = k only (got m = " + std::to_string(*p.m) +
                             ", k = " + std::to_string(p.k) + ")");
    }
}

inline void require_positive_rho(double rho, char const* what)
{
    if (!(rho > 0.0)) {
        throw DomainError(std::string(what) + ": rho must be positive (got " + std::to_string(rho) + ")");
    }
}

} // namespace qes
