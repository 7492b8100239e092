#include <gtest/gtest.h>

#include <numbers>

#include "random_states.hpp"
#include "rindler/concurrence.hpp"

using namespace rindler;
using rindler::testing::Generator;

namespace {

const XStateCoeffs kBell{-1, -1, -1};

double oracle(ChannelKind k, double r, double p, double mu) {
    return oracle_concurrence(kBell, r, {k, p, mu}).value;
}

}  // namespace

TEST(Wootters, PureAndMixedReferences) {
    EXPECT_NEAR(wootters_concurrence(build_x_state(kBell)).value, 1.0, 1e-14);
    EXPECT_NEAR(wootters_concurrence(build_x_state(preset_coeffs("werner"))).value, 0.7, 1e-14);
    EXPECT_NEAR(wootters_concurrence(DensityMatrix(ComplexMatrix::identity(4) * Complex(0.25))).value, 0.0, 1e-15);
}

TEST(Wootters, LambdasAreSortedAndNonNegative) {
    const auto res = wootters_concurrence(build_x_state(preset_coeffs("werner")));
    ASSERT_TRUE(res.lambdas.has_value());
    const auto &l = *res.lambdas;
    EXPECT_NEAR(l[0], 0.85, 1e-14);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_GE(l[i], l[i + 1]);
    EXPECT_GE(l[3], 0.0);
}

TEST(Wootters, LocalUnitaryInvariance) {
    Generator gen(41);
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix rho = gen.random_low_rank_density(4, 1 + t % 4);
        const ComplexMatrix u = tensor(gen.random_unitary(2), gen.random_unitary(2));
        const double before = wootters_concurrence(DensityMatrix(rho)).value;
        const double after = wootters_concurrence(DensityMatrix(u * rho * u.adjoint())).value;
        EXPECT_NEAR(before, after, 1e-9);
    }
}

TEST(Wootters, AgreesWithXShortcutOnXStates) {
    Generator gen(42);
    for (int t = 0; t < 300; ++t) {
        const XStateCoeffs c = gen.random_physical_coeffs();
        const DensityMatrix rho = unruh_transform(c, gen.uniform(0, kMaxRindlerParam));
        EXPECT_NEAR(wootters_concurrence(rho).value, xstate_concurrence(rho).value, 1e-10);
    }
}

TEST(Wootters, RejectsWrongDimension) {
    EXPECT_THROW(wootters_concurrence(DensityMatrix(ComplexMatrix::identity(2) * Complex(0.5))), Error);
}

TEST(XShortcut, RejectsNonXStates) {
    Generator gen(43);
    try {
        xstate_concurrence(gen.random_density(4));
        FAIL() << "expected NotXForm";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotXForm);
    }
}

TEST(Oracle, KnownChannelValues) {
    for (double p : {0.0, 0.1, 0.25, 0.6, 0.9}) {
        EXPECT_NEAR(oracle(ChannelKind::BitFlip, 0, p, 0), (1 - 2 * p) * (1 - 2 * p), 1e-12);
        for (double mu : {0.0, 0.4, 1.0}) {
            EXPECT_NEAR(oracle(ChannelKind::BitFlip, 0, p, mu), std::abs(1 - 4 * p * (1 - p) * (1 - mu)), 1e-12);
        }
    }
    EXPECT_NEAR(oracle(ChannelKind::Depolarizing, 0, 1, 0), 0.0, 1e-15);
    EXPECT_NEAR(oracle(ChannelKind::AmplitudeDamping, std::numbers::pi / 4, 0, 0), std::sqrt(0.5), 1e-12);
}

TEST(Oracle, DepolarizingMonotoneInP) {
    for (double mu : {0.0, 0.5, 1.0}) {
        double previous = 2.0;
        for (int i = 0; i <= 50; ++i) {
            const double c = oracle(ChannelKind::Depolarizing, 0.3, i / 50.0, mu);
            EXPECT_LE(c, previous + 1e-12);
            previous = c;
        }
    }
}

TEST(Oracle, FullMemoryDepolarizingKeepsSinglet) {
    for (double p : {0.0, 0.5, 1.0}) EXPECT_NEAR(oracle(ChannelKind::Depolarizing, 0, p, 1.0), 1.0, 1e-12);
}

// Reference values computed independently from the same published expressions.
TEST(ClosedForm, TranscriptionReferenceValues) {
    auto cf = [](ChannelKind k, double r, double p, double mu) {
        return closed_form_concurrence(k, kBell, r, p, mu).unclamped;
    };
    EXPECT_NEAR(cf(ChannelKind::AmplitudeDamping, 0.5, 0.3, 0.5), 0.18239780033441913, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::Depolarizing, 0.5, 0.3, 0.5), 0.7821385348293123, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::BitFlip, 0.5, 0.3, 0.5), 0.9283228782912052, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::AmplitudeDamping, 0, 0.3, 0), 0.13142507005605605, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::Depolarizing, 0, 0.3, 0), 0.737563556583431, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::BitFlip, 0, 0.3, 0), 0.7017424305044162, 1e-13);
    EXPECT_NEAR(cf(ChannelKind::BitFlip, 0, 0.0, 0), 2.0, 1e-13);
}

TEST(ClosedForm, ClampsIntoUnitInterval) {
    const auto res = closed_form_concurrence(ChannelKind::BitFlip, kBell, 0, 0, 0);
    EXPECT_EQ(res.value, 1.0);
    EXPECT_EQ(res.method, Method::ClosedForm);
}

TEST(ClosedForm, DomainErrorCarriesTerm) {
    EXPECT_NEAR(closed_form::checked_sqrt(-1e-12, "t"), 0.0, 0.0);
    try {
        closed_form::checked_sqrt(-0.5, "dep.first");
        FAIL() << "expected ClosedFormDomainError";
    } catch (const ClosedFormDomainError &e) {
        EXPECT_EQ(e.code(), ErrorCode::ClosedFormDomainError);
        EXPECT_EQ(e.term(), "dep.first");
        EXPECT_EQ(e.radicand(), -0.5);
    }
}

TEST(ClosedForm, ValidatesInputs) {
    EXPECT_THROW(closed_form_concurrence(ChannelKind::BitFlip, kBell, 1.0, 0.1, 0.1), Error);
    EXPECT_THROW(closed_form_concurrence(ChannelKind::BitFlip, kBell, 0.1, 1.5, 0.1), Error);
    EXPECT_THROW(closed_form_concurrence(ChannelKind::BitFlip, {2, 0, 0}, 0.1, 0.1, 0.1), Error);
}
