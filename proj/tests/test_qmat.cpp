#include <gtest/gtest.h>

#include <numeric>

#include "random_states.hpp"
#include "rindler/qmat.hpp"

using namespace rindler;
using rindler::testing::Generator;

TEST(ComplexMatrix, PauliAlgebra) {
    const auto x = pauli(1), y = pauli(2), z = pauli(3);
    EXPECT_LE(max_abs_diff(x * x, ComplexMatrix::identity(2)), 1e-15);
    EXPECT_LE(max_abs_diff(x * y, z * Complex(0, 1)), 1e-15);
    EXPECT_LE(max_abs_diff(y * z, x * Complex(0, 1)), 1e-15);
    EXPECT_THROW(pauli(4), Error);
}

TEST(ComplexMatrix, MismatchedDimensionsThrow) {
    EXPECT_THROW(ComplexMatrix(2) * ComplexMatrix(4), Error);
    EXPECT_THROW(max_abs_diff(ComplexMatrix(2), ComplexMatrix(3)), Error);
}

TEST(Tensor, KnownProduct) {
    const auto zx = tensor(pauli(3), pauli(1));
    EXPECT_EQ(zx.dim(), 4u);
    EXPECT_EQ(zx(0, 1), Complex(1));
    EXPECT_EQ(zx(2, 3), Complex(-1));
    EXPECT_EQ(zx(0, 0), Complex(0));
}

TEST(Tensor, AssociativeOnRandomMatrices) {
    Generator gen(11);
    for (int k = 0; k < 20; ++k) {
        const auto a = gen.random_matrix(2), b = gen.random_matrix(2), c = gen.random_matrix(3);
        EXPECT_LE(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
    }
}

TEST(PartialTrace, OfProductRecoversFactor) {
    Generator gen(12);
    for (int k = 0; k < 20; ++k) {
        const auto a = gen.random_density(2), b = gen.random_density(2), c = gen.random_density(2);
        const auto abc = tensor(tensor(a, b), c);
        EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 2, 2}, 2), tensor(a, b)), 1e-12);
        EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 2, 2}, 1), tensor(a, c)), 1e-12);
        EXPECT_LE(max_abs_diff(partial_trace(abc, {2, 2, 2}, 0), tensor(b, c)), 1e-12);
    }
}

TEST(PartialTrace, BadPartition) {
    const auto m = ComplexMatrix::identity(4);
    try {
        partial_trace(m, {2, 3}, 0);
        FAIL() << "expected BadPartition";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadPartition);
    }
    EXPECT_THROW(partial_trace(m, {2, 2}, 2), Error);
}

TEST(HermitianEigen, DiagonalInput) {
    const std::vector<double> d{0.1, 0.7, -0.3, 0.5};
    const auto eig = hermitian_eigen(ComplexMatrix::diagonal(d));
    EXPECT_EQ(eig.sweeps, 0);
    EXPECT_DOUBLE_EQ(eig.values[0], 0.7);
    EXPECT_DOUBLE_EQ(eig.values[3], -0.3);
}

TEST(HermitianEigen, ResidualAndTraceOnRandomInputs) {
    Generator gen(13);
    for (std::size_t dim : {2u, 3u, 4u, 8u}) {
        for (int k = 0; k < 25; ++k) {
            const auto h = gen.random_hermitian(dim);
            const auto eig = hermitian_eigen(h);
            for (std::size_t i = 0; i + 1 < dim; ++i) EXPECT_GE(eig.values[i], eig.values[i + 1]);
            const double sum = std::accumulate(eig.values.begin(), eig.values.end(), 0.0);
            EXPECT_NEAR(sum, h.trace().real(), 1e-10);
            for (std::size_t i = 0; i < dim; ++i) {
                ComplexMatrix v(dim);
                for (std::size_t r = 0; r < dim; ++r) v(r, 0) = eig.vectors(r, i);
                const ComplexMatrix residual = h * v - v * Complex(eig.values[i]);
                EXPECT_LE(residual.frobenius_norm(), 1e-9);
            }
            EXPECT_LE(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(dim)), 1e-10);
        }
    }
}

TEST(HermitianEigen, RejectsNonHermitian) {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    try {
        hermitian_eigen(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(PsdSqrt, SquaresBackOnRandomStates) {
    Generator gen(14);
    for (int k = 0; k < 100; ++k) {
        const auto rho = k % 2 ? gen.random_density(4) : gen.random_low_rank_density(4, 1 + k % 3);
        const auto root = psd_sqrt(rho);
        EXPECT_LE(max_abs_diff(root * root, rho), 1e-9);
        EXPECT_LE(hermiticity_residual(root), 1e-12);
    }
}

TEST(PsdSqrt, RejectsNegativeSpectrum) {
    const std::vector<double> d{1.2, -0.2};
    try {
        psd_sqrt(ComplexMatrix::diagonal(d));
        FAIL() << "expected NotPSD";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    }
}
