#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "rindler/channels.hpp"
#include "rindler/error.hpp"
#include "rindler/qmat.hpp"
#include "rindler/unruh.hpp"
#include "rindler/xstate.hpp"

namespace rindler {

enum class Method { Wootters, XShortcut, ClosedForm };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::Wootters: return "wootters";
        case Method::XShortcut: return "xform";
        case Method::ClosedForm: return "closed";
    }
    return "unknown";
}

struct ConcurrenceResult {
    double value = 0.0;
    Method method = Method::Wootters;
    /// Wootters only: square roots of the spectrum of ρρ̃, descending.
    std::optional<std::array<double, 4>> lambdas;
    /// The expression before the max(0, ·) and ≤ 1 clamps.
    double unclamped = 0.0;
};

inline double clamp_unit(double x) {
    return std::clamp(x, 0.0, 1.0);
}

/// (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
inline ComplexMatrix spin_flip(const ComplexMatrix &rho) {
    const ComplexMatrix yy = tensor(pauli(2), pauli(2));
    return yy * rho.conjugate() * yy;
}

inline ComplexMatrix spin_flip(const DensityMatrix &rho) {
    return spin_flip(rho.matrix());
}

/// Wootters concurrence. The λ_i (square roots of the spectrum of ρρ̃) are
/// the singular values of A = √ρ (σ_y⊗σ_y) √ρ*, since A A† = √ρ ρ̃ √ρ is
/// similar to ρρ̃. They are read off the Hermitian dilation [[0, A], [A†, 0]],
/// whose eigenvalues are ±λ_i, so small λ are never obtained as √(λ²).
inline ConcurrenceResult wootters_concurrence(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw Error(ErrorCode::BadPartition, "concurrence needs a two-qubit state");
    }
    const ComplexMatrix root = psd_sqrt(rho.matrix());
    const ComplexMatrix yy = tensor(pauli(2), pauli(2));
    const ComplexMatrix a = root * yy * root.conjugate();

    ComplexMatrix dilation(8);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            dilation(r, c + 4) = a(r, c);
            dilation(c + 4, r) = std::conj(a(r, c));
        }
    }
    const auto eig = hermitian_eigenvalues(dilation);

    std::array<double, 4> lambdas{};
    for (std::size_t k = 0; k < 4; ++k) {
        lambdas[k] = std::max(0.0, eig[k]);
    }
    const double raw = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    return ConcurrenceResult{clamp_unit(raw), Method::Wootters, lambdas, raw};
}

/// 2 max(0, |ρ03| − √(ρ11ρ22), |ρ12| − √(ρ00ρ33)) for X-shaped states.
inline ConcurrenceResult xstate_concurrence(const ComplexMatrix &rho) {
    if (rho.dim() != 4 || !is_x_form(rho)) {
        throw Error(ErrorCode::NotXForm, "state has entries off the diagonal and anti-diagonal");
    }
    auto root_product = [](Complex a, Complex b) { return std::sqrt(std::max(0.0, (a * b).real())); };
    const double outer = root_product(rho(0, 3), rho(3, 0)) - root_product(rho(1, 1), rho(2, 2));
    const double inner = root_product(rho(1, 2), rho(2, 1)) - root_product(rho(0, 0), rho(3, 3));
    const double raw = 2.0 * std::max(outer, inner);
    return ConcurrenceResult{clamp_unit(raw), Method::XShortcut, std::nullopt, raw};
}

inline ConcurrenceResult xstate_concurrence(const DensityMatrix &rho) {
    return xstate_concurrence(rho.matrix());
}

namespace closed_form {

/// Radicands in [-kRadicandSlack, 0) are round-off; below that the
/// expression is outside its domain.
inline constexpr double kRadicandSlack = 1e-9;

inline double checked_sqrt(double radicand, const char *term) {
    if (!(radicand >= -kRadicandSlack)) {
        throw ClosedFormDomainError(term, radicand);
    }
    return std::sqrt(std::max(0.0, radicand));
}

// The three expressions below are transcribed term by term from the
// published forms; the shared names follow the printed layout.

inline double amplitude_damping(double cp, double c3, double r, double p, double mu) {
    const double cos2 = std::cos(r) * std::cos(r);
    const double cos_2r = std::cos(2 * r);

    const double coherence = cp * cp * std::pow(p * (mu - 1) + 1, 2) * cos2;
    const double left = 2 * (c3 + 1) * p * mu * cos2 + ((p - 2) * p * (mu - 1) - 1) * (c3 + (c3 + 1) * cos_2r - 3);
    const double right = (p + 1) * (mu - 1) * (c3 * (p - 1) + (c3 + 1) * cos_2r * (p - 1) - 3 * p - 1) -
                         2 * (c3 + 1) * (p - 1) * mu * cos2;

    return (2 * checked_sqrt(coherence, "ad.coherence") - checked_sqrt(left * right, "ad.population")) / 8;
}

inline double depolarizing(double cp, double cm, double c3, double r, double p, double mu) {
    const double cos2 = std::cos(r) * std::cos(r);
    const double cos4 = cos2 * cos2;

    const double shared = (c3 + 1) * p * (cm * mu + cp * (-4 * p + (4 * p - 7) * mu + 4)) * cos2;
    const double first_left = shared - 2 * cp * (p * (mu - 2) + 4);
    const double first_right = shared - 2 * (cp * (4 * (mu - 1) * p * p + (6 - 8 * mu) * p - 4) + cm * p * mu);
    const double first = -cos2 * first_left * first_right;

    const double second_left = cos2 * ((-4 * (mu - 1) * p * p + 8 * (mu - 1) * p + 4) * cm * cm - cp * p * mu * cm +
                                       (c3 + 1) * (c3 + 1) * (p * (mu - 4) + 4) * cos2 + 4 * (c3 + 1) * p);
    const double second_right =
        0.25 * (c3 + 1) * (c3 + 1) * (p * (mu - 4) + 4) * cos4 -
        0.25 *
            (4 * ((mu - 1) * p * p - 2 * (mu - 1) * p - 1) * cm * cm + cp * p * mu * cm +
             4 * c3 * (p * (mu - 3) + 4) + 4 * (p * (mu - 3) + 4)) *
            cos2 +
        p * (mu - 2) + 4;

    return (checked_sqrt(first, "dep.first") - 2 * checked_sqrt(second_left * second_right, "dep.second")) / 16;
}

inline double bit_flip(double cp, double cm, double c3, double r, double p, double mu) {
    const double cos2 = std::cos(r) * std::cos(r);

    const double coherence_amp = cp * (2 * (mu - 1) * p * p - 2 * (mu - 1) * p - 1) + 2 * cm * p * (-mu * p + p + mu - 1);
    const double coherence = coherence_amp * coherence_amp * cos2;
    const double population = (2 * p - (c3 + 1) * (2 * p - 1) * cos2) * ((c3 + 1) * (2 * p - 1) * cos2 - 2 * p + 2);

    return checked_sqrt(coherence, "bf.coherence") - 0.5 * checked_sqrt(population, "bf.population");
}

}  // namespace closed_form

/// Evaluates the published closed-form concurrence for the given channel.
/// Throws ClosedFormDomainError when a radicand is materially negative.
inline ConcurrenceResult closed_form_concurrence(ChannelKind kind, const XStateCoeffs &coeffs, double r, double p,
                                                 double mu, bool magnitudes_mode = false) {
    require_coeff_range(coeffs);
    const double rr = AccelerationParam(r).value();
    require_probability(p, "p");
    require_probability(mu, "mu");
    const XStateCoeffs c = magnitudes_mode ? coeffs.magnitudes() : coeffs;

    double raw = 0.0;
    switch (kind) {
        case ChannelKind::AmplitudeDamping:
            raw = closed_form::amplitude_damping(c.c_plus(), c.c3, rr, p, mu);
            break;
        case ChannelKind::Depolarizing:
            raw = closed_form::depolarizing(c.c_plus(), c.c_minus(), c.c3, rr, p, mu);
            break;
        case ChannelKind::BitFlip:
            raw = closed_form::bit_flip(c.c_plus(), c.c_minus(), c.c3, rr, p, mu);
            break;
    }
    return ConcurrenceResult{clamp_unit(raw), Method::ClosedForm, std::nullopt, raw};
}

/// Brute-force route: Unruh transform, Kraus application, then Wootters (or
/// the X-state formula when the state is not positive and √ρ is undefined).
inline ConcurrenceResult oracle_concurrence(const XStateCoeffs &c, double r, const ChannelSpec &spec,
                                            Strictness strictness = Strictness::Strict) {
    const DensityMatrix out = apply_channel(unruh_transform(c, r, strictness), spec);
    if (out.is_positive()) {
        return wootters_concurrence(out);
    }
    return xstate_concurrence(out);
}

}  // namespace rindler
