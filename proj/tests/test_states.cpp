#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "random_states.hpp"
#include "rindler/unruh.hpp"
#include "rindler/xstate.hpp"

using namespace rindler;
using rindler::testing::Generator;

namespace {

template <class F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception thrown";
    return ErrorCode::IoError;
}

}  // namespace

TEST(XState, MatrixLayout) {
    const auto m = x_state_matrix({0.2, -0.4, 0.6});
    EXPECT_DOUBLE_EQ(m(0, 0).real(), 0.4);
    EXPECT_DOUBLE_EQ(m(1, 1).real(), 0.1);
    EXPECT_DOUBLE_EQ(m(0, 3).real(), 0.15);
    EXPECT_DOUBLE_EQ(m(1, 2).real(), -0.05);
    EXPECT_TRUE(is_x_form(m));
}

TEST(XState, MatchesPauliExpansion) {
    const XStateCoeffs c{0.3, -0.5, 0.1};
    ComplexMatrix expected = ComplexMatrix::identity(4);
    expected += tensor(pauli(1), pauli(1)) * Complex(c.c1);
    expected += tensor(pauli(2), pauli(2)) * Complex(c.c2);
    expected += tensor(pauli(3), pauli(3)) * Complex(c.c3);
    EXPECT_LE(max_abs_diff(x_state_matrix(c), expected * Complex(0.25)), 1e-15);
}

TEST(XState, EigenvaluesMatchClosedForm) {
    Generator gen(21);
    for (int k = 0; k < 200; ++k) {
        const XStateCoeffs c{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
        auto expected = c.eigenvalues();
        std::sort(expected.begin(), expected.end(), std::greater<>());
        const auto got = hermitian_eigenvalues(x_state_matrix(c));
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-12);
    }
}

TEST(XState, BellPresetIsSinglet) {
    const DensityMatrix rho = build_x_state(preset_coeffs("bell"));
    EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho(1, 2).real(), -0.5, 1e-15);
    EXPECT_NEAR(rho(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(rho.min_eigenvalue(), 0.0, 1e-14);
}

TEST(XState, GeneralPresetIsNotPositive) {
    const XStateCoeffs c = preset_coeffs(PresetName::General);
    try {
        build_x_state(c, Strictness::Strict);
        FAIL() << "expected UnphysicalState";
    } catch (const UnphysicalStateError &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnphysicalState);
        EXPECT_NEAR(*std::min_element(e.eigenvalues().begin(), e.eigenvalues().end()), -0.25, 1e-15);
    }
    const DensityMatrix rho = build_x_state(c, Strictness::PaperConvention);
    EXPECT_FALSE(rho.is_positive());
    ASSERT_TRUE(rho.positivity_warning().has_value());
}

TEST(XState, Errors) {
    EXPECT_EQ(code_of([] { preset_coeffs("ghz"); }), ErrorCode::UnknownPreset);
    EXPECT_EQ(code_of([] { build_x_state({1.2, 0, 0}); }), ErrorCode::UnphysicalState);
    EXPECT_EQ(code_of([] { DensityMatrix(ComplexMatrix::identity(4)); }), ErrorCode::NotDensityMatrix);
    ComplexMatrix skew = ComplexMatrix::identity(2) * Complex(0.5);
    skew(0, 1) = 0.1;
    EXPECT_EQ(code_of([&] { DensityMatrix{skew}; }), ErrorCode::NotDensityMatrix);
    const std::vector<double> d{1.5, -0.5};
    EXPECT_EQ(code_of([&] { DensityMatrix(ComplexMatrix::diagonal(d)); }), ErrorCode::NotPSD);
}

TEST(XState, CustomLabel) {
    const StatePreset s{PresetName::Custom, {0.1, -0.2, 0.3}, false};
    EXPECT_EQ(s.label(), "custom:0.1;-0.2;0.3");
    EXPECT_EQ(make_preset(PresetName::Werner).label(), "werner");
}

TEST(Diagnostics, ReportsShape) {
    ComplexMatrix m = x_state_matrix({0.1, 0.1, 0.1});
    EXPECT_TRUE(state_diagnostics(m).is_x_form);
    m(0, 1) = m(1, 0) = 0.01;
    const auto d = state_diagnostics(m);
    EXPECT_FALSE(d.is_x_form);
    EXPECT_NEAR(d.trace, 1.0, 1e-15);
}

TEST(Unruh, InertialIsIdentityMap) {
    Generator gen(22);
    for (int k = 0; k < 20; ++k) {
        const XStateCoeffs c = gen.random_physical_coeffs();
        EXPECT_LE(max_abs_diff(unruh_matrix(c, AccelerationParam(0.0)), x_state_matrix(c)), 1e-15);
    }
}

TEST(Unruh, ClosedFormMatchesIsometryOracle) {
    Generator gen(23);
    for (int k = 0; k < 50; ++k) {
        const XStateCoeffs c{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
        const AccelerationParam r(gen.uniform(0, kMaxRindlerParam));
        EXPECT_LE(max_abs_diff(unruh_matrix(c, r), unruh_oracle_matrix(c, r)), 1e-12);
    }
}

TEST(Unruh, PreservesTraceAndHermiticity) {
    Generator gen(24);
    for (int k = 0; k < 50; ++k) {
        const XStateCoeffs c = gen.random_physical_coeffs();
        const DensityMatrix rho = unruh_transform(c, gen.uniform(0, kMaxRindlerParam));
        EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-14);
        EXPECT_LE(hermiticity_residual(rho.matrix()), 1e-15);
        EXPECT_TRUE(rho.is_positive());
        EXPECT_TRUE(is_x_form(rho.matrix()));
    }
}

TEST(Unruh, BellAtInfiniteAcceleration) {
    const DensityMatrix rho = unruh_transform(preset_coeffs("bell"), std::numbers::pi / 4);
    EXPECT_NEAR(rho(1, 2).real(), -0.5 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(rho(3, 3).real(), 0.25, 1e-15);
    EXPECT_NEAR(rho(1, 1).real(), 0.5, 1e-15);
}

TEST(Unruh, ParameterDomain) {
    EXPECT_NO_THROW(AccelerationParam(std::numbers::pi / 4));
    EXPECT_EQ(code_of([] { AccelerationParam(0.8); }), ErrorCode::BadRindlerParam);
    EXPECT_EQ(code_of([] { AccelerationParam(-1e-3); }), ErrorCode::BadRindlerParam);
    EXPECT_EQ(code_of([] { AccelerationParam(std::nan("")); }), ErrorCode::BadRindlerParam);
}

TEST(Unruh, PhysicalAcceleration) {
    EXPECT_NEAR(acceleration_to_r({1e30, 1.0}).value(), std::numbers::pi / 4, 1e-12);
    EXPECT_LT(acceleration_to_r({1.0, 1.0}).value(), 1e-300);
    // πωc/a = ln 3 gives tan r = 1/3.
    const double a = std::numbers::pi * 2.0 * 3.0 / std::log(3.0);
    EXPECT_NEAR(std::tan(acceleration_to_r({a, 2.0, 3.0}).value()), 1.0 / 3.0, 1e-14);
    EXPECT_EQ(code_of([] { acceleration_to_r({0.0, 1.0}); }), ErrorCode::BadPhysicalParam);
    EXPECT_EQ(code_of([] { acceleration_to_r({1.0, -1.0}); }), ErrorCode::BadPhysicalParam);
}
