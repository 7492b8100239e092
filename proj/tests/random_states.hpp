#pragma once

#include <random>

#include "rindler/qmat.hpp"
#include "rindler/xstate.hpp"

namespace rindler::testing {

class Generator {
   public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    ComplexMatrix random_matrix(std::size_t dim) {
        std::normal_distribution<double> g;
        ComplexMatrix m(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(g(rng_), g(rng_));
        }
        return m;
    }

    ComplexMatrix random_hermitian(std::size_t dim) {
        const ComplexMatrix g = random_matrix(dim);
        return (g + g.adjoint()) * Complex(0.5);
    }

    /// G G† / tr, full rank with probability one.
    ComplexMatrix random_density(std::size_t dim) {
        const ComplexMatrix g = random_matrix(dim);
        ComplexMatrix rho = g * g.adjoint();
        return rho * Complex(1.0 / rho.trace().real());
    }

    /// Density matrix of rank `rank` (columns of G beyond rank zeroed).
    ComplexMatrix random_low_rank_density(std::size_t dim, std::size_t rank) {
        ComplexMatrix g = random_matrix(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = rank; c < dim; ++c) g(r, c) = 0.0;
        }
        ComplexMatrix rho = g * g.adjoint();
        return rho * Complex(1.0 / rho.trace().real());
    }

    ComplexMatrix random_unitary(std::size_t dim) {
        return hermitian_eigen(random_hermitian(dim)).vectors;
    }

    /// Coefficients inside the tetrahedron of physical X-states.
    XStateCoeffs random_physical_coeffs() {
        for (;;) {
            XStateCoeffs c{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
            bool ok = true;
            for (double e : c.eigenvalues()) ok &= e >= 0.0;
            if (ok) return c;
        }
    }

   private:
    std::mt19937_64 rng_;
};

}  // namespace rindler::testing
