#pragma once

/**
 * \file
 * \brief Global adaptive Gauss-Kronrod (7/15) integration on (0, infinity).
 *
 * The half-line is compactified with rho = t / (1 - t). The lower half
 * t in (0, 1/2) is integrated in t; the upper half is integrated in the
 * complementary variable u = 1 - t, rho = (1 - u)/u, so panels that crowd
 * toward rho -> infinity keep full floating-point resolution. Nodes are
 * interior, so neither endpoint is ever evaluated.
 *
 * The alternative substitution rho = e^v - 1, v = t/(1 - t) is provided for
 * cross-checks.
 */

#include <qes/closed_forms.hpp>
#include <qes/errors.hpp>
#include <qes/params.hpp>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace qes::quad {

/// rational: rho = t/(1-t). exponential: rho = e^v - 1 above e - 1 and
/// log-uniform below, which turns algebraic endpoint behaviour into
/// exponential decay in the chart variable.
enum class Substitution { rational, exponential };

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    Substitution substitution = Substitution::rational;
    bool throw_on_failure = true;
};

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subdivisions = 0;
    bool converged = false;
    double rel_tol_used = 0.0;
};

/// The subdivision cap was reached (or panels became unsplittable) before
/// the error target was met; carries the partial result.
class DivergenceSuspected : public std::runtime_error {
public:
    DivergenceSuspected(std::string const& what, IntegralResult partial)
        : std::runtime_error(what), partial_(partial)
    {
    }
    IntegralResult const& partial() const noexcept { return partial_; }

private:
    IntegralResult partial_;
};

namespace detail {

enum class Chart { lower, upper };

struct Panel {
    Chart chart;
    double a;
    double b;
    double value;
    double error;
};

struct RuleResult {
    double kronrod;
    double error;
};

/// K15/G7 pair on [a, b]; |K - G| as the error estimate.
template <typename F> RuleResult gk15(F const& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    auto const& x = kronrod::abscissa();
    auto const& wk = kronrod::weights();
    auto const& wg = gauss::weights();

    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double const f0 = f(mid);
    double k = f0 * wk[0];
    double g = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        double const fs = f(mid + half * x[i]) + f(mid - half * x[i]);
        k += fs * wk[i];
        if (i % 2 == 0) {
            g += fs * wg[i / 2];
        }
    }
    k *= half;
    g *= half;
    return {k, std::max(std::abs(k - g), 2.0 * std::numeric_limits<double>::epsilon() * std::abs(k))};
}

inline constexpr double kLogEMinus1 = 0.54132485461291810;

/// Chart coordinate s in (0, 1/2] to (log rho, log |d rho / ds|) without
/// forming rho itself.
inline std::pair<double, double> chart_map_log(Chart chart, Substitution sub, double s)
{
    double const l1m = std::log1p(-s);
    double const ls = std::log(s);
    if (sub == Substitution::rational) {
        return chart == Chart::lower ? std::pair{ls - l1m, -2.0 * l1m} : std::pair{l1m - ls, -2.0 * ls};
    }
    if (chart == Chart::lower) {
        // rho = (e - 1) exp(2 - 1/s): log-uniform towards the origin, meets the upper chart at e - 1
        double const log_rho = kLogEMinus1 + 2.0 - 1.0 / s;
        return {log_rho, log_rho - 2.0 * ls};
    }
    // rho = e^v - 1, v = (1 - s)/s
    double const v = (1.0 - s) / s;
    double const log_rho = v < 30.0 ? std::log(std::expm1(v)) : v + std::log1p(-std::exp(-v));
    return {log_rho, v - 2.0 * ls};
}

/// rho and d rho / ds for a chart coordinate s in (0, 1/2].
inline std::pair<double, double> chart_map(Chart chart, Substitution sub, double s)
{
    if (sub == Substitution::exponential) {
        auto const [log_rho, log_jac] = chart_map_log(chart, sub, s);
        return {std::exp(log_rho), std::exp(log_jac)};
    }
    if (chart == Chart::lower) {
        double const one_minus = 1.0 - s;
        return {s / one_minus, 1.0 / (one_minus * one_minus)};
    }
    return {(1.0 - s) / s, 1.0 / (s * s)};
}

/// Global adaptive driver over the two charts; `integrand(chart)` returns the
/// chart-space integrand.
template <typename MakeIntegrand> IntegralResult adaptive_charts(MakeIntegrand const& integrand, Options const& opt)
{
    if (!(opt.abs_tol > 0.0) || !(opt.rel_tol > 0.0)) {
        throw ParameterError("integrate_halfline: tolerances must be positive");
    }

    auto make_panel = [&](Chart chart, double a, double b) {
        auto const r = gk15(integrand(chart), a, b);
        return Panel{chart, a, b, r.kronrod, r.error};
    };
    auto by_error = [](Panel const& x, Panel const& y) { return x.error < y.error; };

    std::vector<Panel> heap;
    heap.push_back(make_panel(Chart::lower, 0.0, 0.5));
    heap.push_back(make_panel(Chart::upper, 0.0, 0.5));
    std::make_heap(heap.begin(), heap.end(), by_error);

    auto totals = [&heap] {
        double v = 0.0;
        double e = 0.0;
        for (auto const& p : heap) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };

    IntegralResult res;
    res.rel_tol_used = opt.rel_tol;
    auto [value, error] = totals();
    bool stuck = false;
    while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) && res.subdivisions < opt.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        auto const worst = heap.back();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a) || !(mid < worst.b)) {
            stuck = true;
            std::push_heap(heap.begin(), heap.end(), by_error);
            break;
        }
        heap.pop_back();
        heap.push_back(make_panel(worst.chart, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(make_panel(worst.chart, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++res.subdivisions;
        std::tie(value, error) = totals();
    }

    res.value = value;
    res.abs_error_estimate = error;
    res.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (!res.converged && opt.throw_on_failure) {
        throw DivergenceSuspected(std::string("integrate_halfline: ") +
                                      (stuck ? "panels became unsplittable" : "subdivision cap reached") +
                                      " with error estimate " + std::to_string(error) + " (value " +
                                      std::to_string(value) + ")",
                                  res);
    }
    return res;
}

inline void require_finite(double v, double where)
{
    if (!std::isfinite(v)) {
        throw EvaluationError("integrate_halfline: non-finite integrand at rho = " + std::to_string(where));
    }
}

} // namespace detail

/// Integral of f over (0, infinity).
template <typename F> IntegralResult integrate_halfline(F&& f, Options const& opt = {})
{
    auto integrand = [&](detail::Chart chart) {
        return [&f, &opt, chart](double s) {
            auto const [rho, jac] = detail::chart_map(chart, opt.substitution, s);
            if (jac == 0.0 || !std::isfinite(rho)) {
                return 0.0;
            }
            double const v = f(rho) * jac;
            detail::require_finite(v, rho);
            return v;
        };
    };
    return detail::adaptive_charts(integrand, opt);
}

/**
 * Integral over (0, infinity) of a positive integrand given as
 * log f(rho) = log_f(log rho). Integrand and Jacobian are combined in log
 * space, so panels far out in the tail (rho beyond the double range of
 * rho^2) stay finite.
 */
template <typename LogF> IntegralResult integrate_halfline_log(LogF&& log_f, Options const& opt = {})
{
    struct Overflow {
        double log_rho;
    };
    auto integrand = [&](detail::Chart chart) {
        return [&log_f, &opt, chart](double s) {
            auto const [log_rho, log_jac] = detail::chart_map_log(chart, opt.substitution, s);
            double const lv = log_f(log_rho) + log_jac;
            if (std::isnan(lv)) detail::require_finite(lv, std::exp(log_rho));
            double const v = std::exp(lv);
            if (!std::isfinite(v)) throw Overflow{log_rho};
            return v;
        };
    };
    try {
        return detail::adaptive_charts(integrand, opt);
    } catch (Overflow const& o) {
        // A positive integrand beyond the double range cannot have a finite integral here.
        IntegralResult res;
        res.value = INFINITY;
        res.abs_error_estimate = INFINITY;
        res.rel_tol_used = opt.rel_tol;
        if (opt.throw_on_failure) {
            throw DivergenceSuspected("integrate_halfline: integrand overflows at log rho = " +
                                          std::to_string(o.log_rho),
                                      res);
        }
        return res;
    }
}

enum class Verdict { converges, diverges };

inline std::string_view to_string(Verdict v) { return v == Verdict::converges ? "converges" : "diverges"; }

struct LimitComparison {
    double alpha = 0.0;
    Verdict verdict = Verdict::diverges;
};

/// Tail test: rho^alpha |psi|^2 -> L != 0; the integral converges iff alpha > 1.
inline LimitComparison limit_comparison_alpha(QesParams const& p)
{
    double const alpha = -asymptotic_exponents(p).density_tail();
    return {alpha, alpha > 1.0 ? Verdict::converges : Verdict::diverges};
}

enum class Measure { flat, weighted };

enum class Divergence { none, at_infinity, at_origin };

inline std::string_view to_string(Divergence d)
{
    switch (d) {
    case Divergence::none: return "none";
    case Divergence::at_infinity: return "infinity";
    case Divergence::at_origin: return "origin";
    }
    return "?";
}

struct NormalizationResult {
    Verdict verdict = Verdict::diverges;
    Divergence divergence = Divergence::none;
    double alpha = 0.0;        ///< tail exponent of the limit comparison
    double origin_power = 0.0; ///< integrand ~ rho^{origin_power} near 0
    bool downgraded = false;   ///< near-threshold band: cap raised, rel_tol widened
    std::optional<IntegralResult> integral;
};

/// Width of the near-threshold band on either exponent margin.
inline constexpr double kNearThresholdBand = 0.1;
/// Tolerance used inside the band.
inline constexpr double kNearThresholdRelTol = 1e-6;

/**
 * Normalization integral of |psi|^2 on (0, infinity).
 *
 * The tail is classified by limit_comparison_alpha and the origin by the
 * small-rho exponent; divergent cases return a verdict without integrating.
 * A converging verdict the integrator cannot confirm is an InconsistencyError.
 */
inline NormalizationResult normalization(QesParams const& p, Options opt = {}, Measure measure = Measure::flat)
{
    require_m_equals_k(p);
    auto const ex = asymptotic_exponents(p);
    double const weight = measure == Measure::weighted ? p.tau : 0.0;

    NormalizationResult out;
    out.alpha = -(ex.density_tail() + weight);
    out.origin_power = ex.density_zero() + weight;
    if (!(out.alpha > 1.0)) {
        out.divergence = Divergence::at_infinity;
        return out;
    }
    if (!(out.origin_power > -1.0)) {
        out.divergence = Divergence::at_origin;
        return out;
    }
    out.verdict = Verdict::converges;

    // Inclusive band edges; the slack absorbs rounding in the exponent arithmetic.
    double const edge = kNearThresholdBand + 1e-12;
    if (out.alpha - 1.0 <= edge || out.origin_power + 1.0 <= edge) {
        out.downgraded = true;
        opt.max_subdivisions *= 20;
        opt.rel_tol = std::max(opt.rel_tol, kNearThresholdRelTol);
        // Barely integrable algebraic ends become exponential decay in the chart variable.
        opt.substitution = Substitution::exponential;
    }

    auto log_integrand = [&](double log_rho) { return log_density(p, log_rho) + weight * log_rho; };
    opt.throw_on_failure = false;
    auto const r = integrate_halfline_log(log_integrand, opt);
    if (!r.converged || !std::isfinite(r.value)) {
        throw InconsistencyError("normalization: classifier says converges (alpha = " + std::to_string(out.alpha) +
                                 ") but the integrator did not converge (estimate " + std::to_string(r.value) +
                                 " +/- " + std::to_string(r.abs_error_estimate) + ")");
    }
    out.integral = r;
    return out;
}

} // namespace qes::quad
