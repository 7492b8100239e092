#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rindler/error.hpp"
#include "rindler/qmat.hpp"
#include "rindler/xstate.hpp"

namespace rindler {

inline constexpr double kMaxRindlerParam = std::numbers::pi / 4.0;

/// Dimensionless Rindler parameter r in [0, π/4]; 0 is an inertial
/// observer, π/4 the infinite-acceleration limit.
class AccelerationParam {
   public:
    explicit AccelerationParam(double r) : r_(r) {
        // A few ulps of slack so π/4 produced by grid arithmetic is accepted.
        if (!std::isfinite(r) || r < 0.0 || r > kMaxRindlerParam * (1.0 + 1e-15)) {
            throw Error(ErrorCode::BadRindlerParam, "r = " + std::to_string(r) + " outside [0, pi/4]");
        }
        r_ = std::min(r, kMaxRindlerParam);
    }

    double value() const noexcept {
        return r_;
    }

   private:
    double r_;
};

struct PhysicalAcceleration {
    double acceleration;  // m/s^2
    double omega;         // rad/s, Dirac mode frequency
    double c_light = 299792458.0;
};

/// cos r = (exp(-2πωc/a) + 1)^(-1/2), evaluated as r = atan(exp(-πωc/a)).
inline AccelerationParam acceleration_to_r(const PhysicalAcceleration &phys) {
    for (double v : {phys.acceleration, phys.omega, phys.c_light}) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw Error(ErrorCode::BadPhysicalParam, "non-positive or non-finite value " + std::to_string(v));
        }
    }
    const double x = std::numbers::pi * phys.omega * phys.c_light / phys.acceleration;
    return AccelerationParam(std::atan(std::exp(-x)));
}

/// Alice ⊗ Rob(region I) state seen by a uniformly accelerated Rob, in the
/// single-mode approximation.
inline ComplexMatrix unruh_matrix(const XStateCoeffs &c, AccelerationParam r) {
    const double cr = std::cos(r.value());
    const double sr = std::sin(r.value());
    const double c2 = cr * cr;
    const double s2 = sr * sr;
    ComplexMatrix m(4);
    m(0, 0) = 0.25 * (1 + c.c3) * c2;
    m(1, 1) = 0.25 * ((1 + c.c3) * s2 + (1 - c.c3));
    m(2, 2) = 0.25 * (1 - c.c3) * c2;
    m(3, 3) = 0.25 * ((1 + c.c3) + (1 - c.c3) * s2);
    m(0, 3) = m(3, 0) = 0.25 * c.c_minus() * cr;
    m(1, 2) = m(2, 1) = 0.25 * c.c_plus() * cr;
    return m;
}

inline DensityMatrix unruh_transform(const XStateCoeffs &c, AccelerationParam r,
                                     Strictness strictness = Strictness::Strict) {
    require_coeff_range(c);
    return DensityMatrix(unruh_matrix(c, r), strictness);
}

inline DensityMatrix unruh_transform(const XStateCoeffs &c, double r, Strictness strictness = Strictness::Strict) {
    return unruh_transform(c, AccelerationParam(r), strictness);
}

/// Isometry from Rob's Unruh mode into (region I ⊗ region II):
/// |0⟩ ↦ cos r|00⟩ + sin r|11⟩, |1⟩ ↦ |10⟩. Columns are the images.
inline ComplexMatrix unruh_isometry_columns(AccelerationParam r) {
    // Stored as a 4x4 whose first two columns hold the isometry; the rest is
    // padding so the generic square-matrix type can carry it.
    ComplexMatrix v(4);
    v(0, 0) = std::cos(r.value());
    v(3, 0) = std::sin(r.value());
    v(2, 1) = 1.0;
    return v;
}

/// Substitutes Rob's kets by their Rindler expansion, giving the
/// 8-dimensional Alice ⊗ I ⊗ II operator.
inline ComplexMatrix unruh_embedded_matrix(const XStateCoeffs &c, AccelerationParam r) {
    const ComplexMatrix rho = x_state_matrix(c);
    const ComplexMatrix iso = unruh_isometry_columns(r);

    // big = Σ ρ[(a,b),(a',b')] |a⟩⟨a'| ⊗ V|b⟩⟨b'|V†
    ComplexMatrix big(8);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t a2 = 0; a2 < 2; ++a2) {
                for (std::size_t b2 = 0; b2 < 2; ++b2) {
                    const Complex w = rho(a * 2 + b, a2 * 2 + b2);
                    if (w == Complex(0.0)) {
                        continue;
                    }
                    for (std::size_t k = 0; k < 4; ++k) {
                        for (std::size_t l = 0; l < 4; ++l) {
                            big(a * 4 + k, a2 * 4 + l) += w * iso(k, b) * std::conj(iso(l, b2));
                        }
                    }
                }
            }
        }
    }
    return big;
}

/// Explicit construction followed by the trace over region II.
inline ComplexMatrix unruh_oracle_matrix(const XStateCoeffs &c, AccelerationParam r) {
    return partial_trace(unruh_embedded_matrix(c, r), {2, 2, 2}, 2);
}

inline DensityMatrix unruh_oracle(const XStateCoeffs &c, AccelerationParam r,
                                  Strictness strictness = Strictness::Strict) {
    require_coeff_range(c);
    return DensityMatrix(unruh_oracle_matrix(c, r), strictness);
}

}  // namespace rindler
