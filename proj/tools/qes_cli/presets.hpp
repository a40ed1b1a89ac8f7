#pragma once

// Parameter sets for the figure data tables. The values are chosen here
// (they satisfy each class's constraints); they are not taken from any
// published plot.

#include <qes/params.hpp>

#include <array>
#include <optional>
#include <string_view>

namespace qes::cli {

enum class Quantity { potential, wavefunction, density };

inline std::string_view to_string(Quantity q)
{
    switch (q) {
    case Quantity::potential: return "potential";
    case Quantity::wavefunction: return "wavefunction";
    case Quantity::density: return "density";
    }
    return "?";
}

enum class Spacing { linear, log };

struct FigurePreset {
    std::string_view name;
    std::string_view description;
    QesParams params;
    Quantity quantity;
    double rho_min;
    double rho_max;
    int points;
    Spacing spacing;
};

inline constexpr auto kI = AlgebraClass::I;
inline constexpr auto kII = AlgebraClass::II_PLUS;
inline constexpr auto kIII = AlgebraClass::III;

inline std::array<FigurePreset, 15> const& figure_presets()
{
    static std::array<FigurePreset, 15> const presets{{
        {"fig1a", "class I density, k=3 tau=4 b=1", {kI, 3, 1, 4, {}}, Quantity::density, 1e-3, 1e3, 400, Spacing::log},
        {"fig1b", "class I density, k=4 tau=5 b=2", {kI, 4, 2, 5, {}}, Quantity::density, 1e-3, 1e3, 400, Spacing::log},
        {"fig1c", "class I wavefunction, k=3 tau=4 b=1", {kI, 3, 1, 4, {}}, Quantity::wavefunction, 1e-3, 1e3, 400,
         Spacing::log},
        {"fig1d", "class I wavefunction, k=4 tau=5 b=2", {kI, 4, 2, 5, {}}, Quantity::wavefunction, 1e-3, 1e3, 400,
         Spacing::log},
        {"fig2a", "class II density, k=3 tau=4 b=1", {kII, 3, 1, 4, {}}, Quantity::density, 1e-3, 1e3, 400, Spacing::log},
        {"fig2b", "class II density, k=5 tau=6 b=1", {kII, 5, 1, 6, {}}, Quantity::density, 1e-3, 1e3, 400, Spacing::log},
        {"fig2c", "class II wavefunction, k=3 tau=4 b=1", {kII, 3, 1, 4, {}}, Quantity::wavefunction, 1e-3, 1e3, 400,
         Spacing::log},
        {"fig2d", "class II wavefunction, k=5 tau=6 b=1", {kII, 5, 1, 6, {}}, Quantity::wavefunction, 1e-3, 1e3, 400,
         Spacing::log},
        {"fig3a", "class III density, k=3 tau=5 b=2", {kIII, 3, 2, 5, {}}, Quantity::density, 1e-5, 1e4, 400,
         Spacing::log},
        {"fig3b", "class III density, k=4 tau=6 b=3", {kIII, 4, 3, 6, {}}, Quantity::density, 1e-4, 1e4, 400,
         Spacing::log},
        {"fig3c", "class III wavefunction, k=3 tau=5 b=2", {kIII, 3, 2, 5, {}}, Quantity::wavefunction, 1e-5, 1e4, 400,
         Spacing::log},
        {"fig3d", "class III wavefunction, k=4 tau=6 b=3", {kIII, 4, 3, 6, {}}, Quantity::wavefunction, 1e-4, 1e4, 400,
         Spacing::log},
        {"fig4a", "class I potential, k=3 tau=4 b=1", {kI, 3, 1, 4, {}}, Quantity::potential, 0.05, 20, 400,
         Spacing::log},
        {"fig4b", "class II potential, k=3 tau=4 b=1", {kII, 3, 1, 4, {}}, Quantity::potential, 0.05, 20, 400,
         Spacing::log},
        {"fig4c", "class III potential, k=3 tau=5 b=2", {kIII, 3, 2, 5, {}}, Quantity::potential, 0.05, 20, 400,
         Spacing::log},
    }};
    return presets;
}

inline std::optional<FigurePreset> find_preset(std::string_view name)
{
    for (auto const& p : figure_presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

} // namespace qes::cli
