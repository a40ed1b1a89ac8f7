#pragma once

/**
 * \file
 * \brief Residual oracles for the QES construction.
 *
 * The radial equation at E = 0 is
 *     psi'' + (tau/rho) psi' - 2 V psi = 0.
 * Residuals are reported relative to the largest of the three terms so the
 * scan is scale-free across the many decades psi spans.
 */

#include <qes/closed_forms.hpp>
#include <qes/diffkit.hpp>
#include <qes/errors.hpp>
#include <qes/grid.hpp>
#include <qes/params.hpp>
#include <qes/pct.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace qes::verify {

/// Pass threshold for radial residuals and potential comparisons.
inline constexpr double kResidualThreshold = 1e-8;
/// A losing convention must exceed this to count as clearly rejected.
inline constexpr double kRejectThreshold = 1e-3;
/// Calibration fails outright if no convention gets below this.
inline constexpr double kCalibrationFailure = 1e-4;
/// Winner must beat the loser by this factor.
inline constexpr double kSeparationFactor = 1e3;

/// 60 log-spaced points on [0.05, 20].
inline std::vector<double> standard_grid() { return logspace(0.05, 20.0, 60); }

/// 60 log-spaced points on [0.1, 10], used for potential comparisons.
inline std::vector<double> comparison_grid() { return logspace(0.1, 10.0, 60); }

/**
 * Relative residual of the E = 0 radial equation at rho. `perturbation`
 * adds perturbation / rho^2 to V (sensitivity control).
 */
inline double radial_residual(QesParams const& p, double rho, Convention conv = Convention::chain,
                              double perturbation = 0.0)
{
    auto const psi = wavefunction(p, Jet::variable(rho));
    double const v = potential(p, rho, conv) + perturbation / (rho * rho);
    double const kinetic = psi.d2;
    double const drift = p.tau / rho * psi.d1;
    double const pot = 2.0 * v * psi.value;
    double const scale = std::max({std::abs(kinetic), std::abs(drift), std::abs(pot)});
    double const r = kinetic + drift - pot;
    return scale == 0.0 ? std::abs(r) : std::abs(r) / scale;
}

struct ResidualReport {
    QesParams params;
    Convention convention = Convention::chain;
    std::vector<double> grid;
    double max_abs_relative_residual = 0.0;
    double argmax_rho = 0.0;
    double threshold = kResidualThreshold;
    bool passed = false;
};

inline ResidualReport residual_scan(QesParams const& p, std::span<double const> grid,
                                    Convention conv = Convention::chain, double threshold = kResidualThreshold,
                                    double perturbation = 0.0)
{
    ResidualReport rep{p, conv, {grid.begin(), grid.end()}, 0.0, grid.empty() ? 0.0 : grid.front(), threshold, false};
    for (double rho : grid) {
        double const r = radial_residual(p, rho, conv, perturbation);
        if (!(r <= rep.max_abs_relative_residual)) { // NaN propagates as a failure
            rep.max_abs_relative_residual = r;
            rep.argmax_rho = rho;
        }
    }
    rep.passed = rep.max_abs_relative_residual <= threshold;
    return rep;
}

inline constexpr std::array<Convention, 2> kConventions{Convention::paper, Convention::chain};

struct Calibration {
    Convention best = Convention::chain;
    std::array<double, 2> residuals{}; ///< indexed like kConventions
    bool ambiguous = false;

    double residual(Convention c) const { return residuals[c == Convention::paper ? 0 : 1]; }
};

/// Picks the C convention with the smaller max relative radial residual.
inline Calibration convention_calibrate(QesParams const& p, std::span<double const> grid)
{
    if (grid.size() < 20) {
        throw ParameterError("convention_calibrate: need at least 20 grid points");
    }
    Calibration cal;
    for (std::size_t i = 0; i < kConventions.size(); ++i) {
        cal.residuals[i] = residual_scan(p, grid, kConventions[i]).max_abs_relative_residual;
    }
    std::size_t const win = cal.residuals[0] <= cal.residuals[1] ? 0 : 1;
    double const lose = cal.residuals[1 - win];
    cal.best = kConventions[win];
    if (!(cal.residuals[win] <= kCalibrationFailure)) {
        throw CalibrationError("convention_calibrate: no convention passes (C_paper residual " +
                               std::to_string(cal.residuals[0]) + ", C_chain residual " +
                               std::to_string(cal.residuals[1]) + ")");
    }
    cal.ambiguous = !(lose >= kSeparationFactor * cal.residuals[win]) && !(cal.residuals[win] == 0.0 && lose > 0.0);
    return cal;
}

struct PotentialDiff {
    double max_rel_diff = 0.0;
    double argmax = 0.0;
};

/// max |V_closed - V_algebra| / (1 + |V_closed|) over the grid.
inline PotentialDiff closed_vs_algebra_diff(QesParams const& p, std::span<double const> grid,
                                            Convention conv = Convention::chain)
{
    PotentialDiff d{0.0, grid.empty() ? 0.0 : grid.front()};
    for (double rho : grid) {
        double const closed = potential(p, rho, conv);
        double const algebra = pct::algebra_side_potential(p, rho);
        double const rel = std::abs(closed - algebra) / (1.0 + std::abs(closed));
        if (!(rel <= d.max_rel_diff)) {
            d.max_rel_diff = rel;
            d.argmax = rho;
        }
    }
    return d;
}

/// The nine (class, k, tau, b) sets used for end-to-end verification.
inline std::vector<QesParams> acceptance_parameter_sets()
{
    using C = AlgebraClass;
    auto make = [](C c, double k, double tau, double b) { return QesParams{c, k, b, tau, std::nullopt}; };
    return {
        make(C::I, 3, 4, 1),       make(C::I, 5, 8, 1),       make(C::I, 4, 5, 2),
        make(C::II_PLUS, 3, 4, 1), make(C::II_PLUS, 4, 4, 2), make(C::II_PLUS, 5, 6, 1),
        make(C::III, 2, 5, 2),     make(C::III, 3, 5, 2),     make(C::III, 4, 6, 3),
    };
}

} // namespace qes::verify
