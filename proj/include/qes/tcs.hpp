#pragma once

/**
 * \file
 * \brief Truncated Calogero-Sutherland parameters and pointwise interaction terms.
 *
 * Only the effective radial parameter
 *     tau = N + 2s - 1 + lambda r (2N - r - 1)
 * feeds the QES construction; v_int and v_new are plain evaluators.
 */

#include <qes/closed_forms.hpp>
#include <qes/errors.hpp>
#include <qes/params.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <span>
#include <string>

namespace qes::tcs {

struct TcsParams {
    int N = 2;
    double lambda = 1.0;
    int r = 1;
    int s = 0;
    double omega = 1.0;
};

enum class Interaction { attractive, repulsive, other };

/// 0 < lambda < 1 attractive, lambda >= 1 repulsive; anything else is untagged.
inline Interaction interaction_kind(double lambda)
{
    if (lambda > 0.0 && lambda < 1.0) return Interaction::attractive;
    if (lambda >= 1.0) return Interaction::repulsive;
    return Interaction::other;
}

inline void validate(TcsParams const& t)
{
    if (t.N < 2) throw ParameterError("N must be at least 2");
    if (t.lambda == 0.0) throw ParameterError("lambda must be nonzero");
    if (t.r < 1 || t.r > t.N - 1) {
        throw ParameterError("r must lie in [1, N-1] (got r = " + std::to_string(t.r) + ", N = " + std::to_string(t.N) +
                             ")");
    }
    if (t.s < 0) throw ParameterError("s must be nonnegative");
    if (!(t.omega > 0.0)) throw ParameterError("omega must be positive");
}

inline double tau_of(int N, int s, double lambda, int r)
{
    validate({N, lambda, r, s, 1.0});
    return static_cast<double>(N + 2 * s - 1) + lambda * static_cast<double>(r * (2 * N - r - 1));
}

inline double tau_of(TcsParams const& t)
{
    validate(t);
    return tau_of(t.N, t.s, t.lambda, t.r);
}

/**
 * Truncated two- and three-body interaction for positions x_1..x_N:
 *   sum_{i<j, j-i<=r} lambda(lambda-1) / (x_i - x_j)^2
 * + sum_{i<j<k, j-i<=r, k-j<=r} lambda^2 (x_i - x_j)(x_j - x_k) / ((x_j - x_i)^2 (x_j - x_k)^2)
 */
inline double v_int(std::span<double const> x, double lambda, int r)
{
    int const n = static_cast<int>(x.size());
    if (n < 2) throw ParameterError("v_int: need at least two particles");
    if (r < 1 || r > n - 1) throw ParameterError("v_int: r must lie in [1, N-1]");

    auto sep = [&](int i, int j) {
        double const d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
        if (d == 0.0) {
            throw SingularityError("v_int: particles " + std::to_string(i) + " and " + std::to_string(j) +
                                   " coincide within the interaction range");
        }
        return d;
    };

    double two_body = 0.0;
    double three_body = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && j - i <= r; ++j) {
            double const dij = sep(i, j);
            two_body += 1.0 / (dij * dij);
            for (int k = j + 1; k < n && k - j <= r; ++k) {
                double const djk = sep(j, k);
                three_body += (dij * djk) / ((dij * dij) * (djk * djk));
            }
        }
    }
    return lambda * (lambda - 1.0) * two_body + lambda * lambda * three_body;
}

struct VNewParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta1 = 1.0;
    double beta2 = 0.0;
};

/// (alpha1 + alpha2 w^2 rho^2) / (beta1 + beta2 w^2 rho^2)^2.
inline double v_new(double rho, VNewParams const& p, double omega)
{
    double const w2r2 = omega * omega * rho * rho;
    double const den = p.beta1 + p.beta2 * w2r2;
    if (den == 0.0) {
        throw SingularityError("v_new: beta1 + beta2 omega^2 rho^2 vanishes at rho = " + std::to_string(rho));
    }
    return (p.alpha1 + p.alpha2 * w2r2) / (den * den);
}

struct ClassReports {
    double tau = 0.0;
    std::array<AdmissibilityReport, 3> reports; ///< classes I, II, III in order
};

inline constexpr std::array<AlgebraClass, 3> kQesClasses{AlgebraClass::I, AlgebraClass::II_PLUS, AlgebraClass::III};

inline ClassReports classify(TcsParams const& t, double k, double b)
{
    ClassReports out;
    out.tau = tau_of(t);
    for (std::size_t i = 0; i < kQesClasses.size(); ++i) {
        out.reports[i] = admissibility(QesParams{kQesClasses[i], k, b, out.tau, std::nullopt});
    }
    return out;
}

} // namespace qes::tcs
