#pragma once

#include <qes/errors.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

namespace qes {

/// n equally spaced points on [a, b], endpoints included.
inline std::vector<double> linspace(double a, double b, std::size_t n)
{
    if (n < 2) {
        throw ParameterError("linspace: need at least 2 points");
    }
    std::vector<double> out(n);
    double const step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + step * static_cast<double>(i);
    }
    out.back() = b;
    return out;
}

/// n logarithmically spaced points on [a, b], a > 0.
inline std::vector<double> logspace(double a, double b, std::size_t n)
{
    if (!(a > 0) || !(b > 0)) {
        throw DomainError("logspace: endpoints must be positive");
    }
    auto out = linspace(std::log(a), std::log(b), n);
    for (auto& v : out) {
        v = std::exp(v);
    }
    out.front() = a;
    out.back() = b;
    return out;
}

} // namespace qes
