#include <qes/grid.hpp>
#include <qes/so21.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace qes;

namespace {

constexpr std::array kAllClasses{AlgebraClass::I, AlgebraClass::II_PLUS, AlgebraClass::II_MINUS, AlgebraClass::III};

std::vector<double> ode_grid(AlgebraClass cls)
{
    return cls == AlgebraClass::III ? linspace(0.1, 5.0, 101) : linspace(-5.0, 5.0, 101);
}

} // namespace

TEST(ClassFunctions, FExamples)
{
    EXPECT_EQ(F_eval(AlgebraClass::I, 0.0), 0.0);
    EXPECT_EQ(F_eval(AlgebraClass::II_PLUS, 17.3), 1.0);
    EXPECT_EQ(F_eval(AlgebraClass::II_MINUS, 17.3), -1.0);
    EXPECT_NEAR(F_eval(AlgebraClass::III, std::numbers::ln2), 5.0 / 3.0, 1e-15);
}

TEST(ClassFunctions, GExamples)
{
    EXPECT_EQ(G_eval(AlgebraClass::I, 1.0, 0.0), 1.0);
    EXPECT_EQ(G_eval(AlgebraClass::II_PLUS, 2.0, 0.0), 2.0);
    EXPECT_NEAR(G_eval(AlgebraClass::III, 1.0, std::numbers::ln2), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(G_eval(AlgebraClass::II_MINUS, 2.0, 1.0), 2.0 * std::numbers::e, 1e-14);
}

TEST(ClassFunctions, ClassIIISingularAtOrigin)
{
    EXPECT_THROW(F_eval(AlgebraClass::III, 0.0), SingularityError);
    EXPECT_THROW(G_eval(AlgebraClass::III, 1.0, 0.0), SingularityError);
    EXPECT_THROW(potential_Vm(AlgebraClass::III, 1.0, 1.0, 0.0), SingularityError);
    std::vector<double> const grid{-1.0, 0.0, 1.0};
    EXPECT_THROW(check_defining_odes(AlgebraClass::III, 1.0, grid), SingularityError);
}

TEST(ClassFunctions, ParseAndPrint)
{
    EXPECT_EQ(parse_algebra_class("II"), AlgebraClass::II_PLUS);
    EXPECT_EQ(parse_algebra_class("III"), AlgebraClass::III);
    EXPECT_FALSE(parse_algebra_class("IV").has_value());
    for (auto c : kAllClasses) {
        EXPECT_EQ(parse_algebra_class(to_string(c)), c);
    }
}

TEST(DefiningOdes, HoldOnClassGrids)
{
    for (auto cls : kAllClasses) {
        for (double b : {0.5, 1.0, 2.0, 5.0}) {
            auto const grid = ode_grid(cls);
            auto const dev = check_defining_odes(cls, b, grid);
            EXPECT_LT(dev.max_dev_F, 1e-12) << to_string(cls) << " b=" << b;
            EXPECT_LT(dev.max_dev_G, 1e-12) << to_string(cls) << " b=" << b;
        }
    }
}

TEST(DefiningOdes, ClassIIIOnDefaultGrid)
{
    auto const grid = default_class_grid(AlgebraClass::III);
    EXPECT_GT(grid.front(), 0.0);
    auto const dev = check_defining_odes(AlgebraClass::III, 2.0, grid);
    EXPECT_LT(dev.max_dev_F, 1e-12);
    EXPECT_LT(dev.max_dev_G, 1e-12);
}

TEST(PotentialFamily, Examples)
{
    EXPECT_NEAR(potential_Vm(AlgebraClass::I, 1.0, 1.0, 0.0), 0.25, 1e-15);
    EXPECT_NEAR(potential_Vm(AlgebraClass::II_PLUS, 1.0, 0.5, 0.0), 0.0, 1e-15);
}

TEST(PotentialFamily, VanishingCouplingGivesPoschlTeller)
{
    for (double m : {0.5, 1.0, 2.5}) {
        for (double x : linspace(-3.0, 3.0, 13)) {
            double const s = 1.0 / std::cosh(x);
            EXPECT_NEAR(potential_Vm(AlgebraClass::I, 0.0, m, x), (0.25 - m * m) * s * s, 1e-14);
        }
    }
}

TEST(Energy, BoundEnergyAndCasimir)
{
    EXPECT_DOUBLE_EQ(bound_energy(1.0), -0.25);
    EXPECT_DOUBLE_EQ(bound_energy(3.0), -6.25);
    EXPECT_THROW(bound_energy(0.5), RepresentationError);
    EXPECT_NO_THROW(bound_energy(0.5 + 1e-9));
    EXPECT_DOUBLE_EQ(casimir(3.0), 6.0);
}

TEST(GroundState, Examples)
{
    for (double g : {-1.0, 0.0, 0.7}) {
        EXPECT_NEAR(ground_state_chi0(AlgebraClass::I, 0.0, 1.0, g), std::sqrt(1.0 / std::cosh(g)), 1e-15);
    }
    // (1/2)^{5/2} e^{-1/2} evaluated at high precision: 0.10722048562008835...
    EXPECT_NEAR(ground_state_chi0(AlgebraClass::II_PLUS, 1.0, 3.0, std::numbers::ln2), 0.10722048562008835, 1e-15);
    EXPECT_NEAR(ground_state_chi0(AlgebraClass::I, 1.0, 2.0, 0.0), 1.0, 1e-15);
}

TEST(GroundState, NonRealPowerRejected)
{
    // k - 1/2 = 1.5 with G < 0 would need a complex power.
    EXPECT_THROW(ground_state_chi0(AlgebraClass::I, -1.0, 2.0, 0.3), DomainError);
    // Integral k - 1/2 is fine for either sign.
    EXPECT_NO_THROW(ground_state_chi0(AlgebraClass::I, -1.0, 2.5, 0.3));
}

TEST(GroundState, EigenRelationHolds)
{
    for (auto cls : kAllClasses) {
        for (double k : {2.0, 3.0, 5.0}) {
            for (double b : {0.5, 1.0, 2.0}) {
                for (double x : default_class_grid(cls)) {
                    EXPECT_LT(eigen_relation_residual(cls, b, k, x), 1e-8)
                        << to_string(cls) << " k=" << k << " b=" << b << " x=" << x;
                }
            }
        }
    }
}

TEST(GroundState, EigenRelationAtVanishingCoupling)
{
    for (double k : {1.0, 2.5}) {
        for (double x : linspace(-4.0, 4.0, 17)) {
            EXPECT_LT(eigen_relation_residual(AlgebraClass::I, 0.0, k, x), 1e-8);
        }
    }
}

TEST(GroundState, WrongEnergyIsDetected)
{
    // chi_0 of k paired with V_{k'} for k' != k fails the relation.
    double const x = 0.4;
    auto const chi = ground_state_chi0(AlgebraClass::I, 1.0, 3.0, Jet::variable(x));
    double const v = potential_Vm(AlgebraClass::I, 1.0, 3.5, x);
    double const r = -chi.d2 + v * chi.value - bound_energy(3.0) * chi.value;
    EXPECT_GT(std::abs(r) / std::abs(chi.value), 1e-2);
}
