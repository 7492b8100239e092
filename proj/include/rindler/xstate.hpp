#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "rindler/error.hpp"
#include "rindler/qmat.hpp"

namespace rindler {

/// Physicality policy for density matrices. `PaperConvention` lets states
/// with negative eigenvalues through (with a recorded warning) so published
/// parameter sets that are not positive operators can still be evaluated.
enum class Strictness { Strict, PaperConvention };

inline constexpr double kDensityTolerance = 1e-10;

/// Unit-trace Hermitian matrix, optionally checked for positivity.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix mat, Strictness strictness = Strictness::Strict)
        : mat_(std::move(mat)), strictness_(strictness) {
        const double trace_err = std::abs(mat_.trace() - Complex(1.0));
        if (trace_err > kDensityTolerance) {
            throw Error(ErrorCode::NotDensityMatrix, "trace deviates from 1 by " + std::to_string(trace_err));
        }
        const double herm = hermiticity_residual(mat_);
        if (herm > kDensityTolerance) {
            throw Error(ErrorCode::NotDensityMatrix, "hermiticity residual " + std::to_string(herm));
        }
        min_eigenvalue_ = hermitian_eigenvalues(mat_).back();
        if (min_eigenvalue_ < -kNegativeClamp) {
            if (strictness_ == Strictness::Strict) {
                throw Error(ErrorCode::NotPSD, "minimum eigenvalue " + std::to_string(min_eigenvalue_));
            }
            positivity_warning_ = "state is not positive: minimum eigenvalue " + std::to_string(min_eigenvalue_);
        }
    }

    const ComplexMatrix &matrix() const noexcept {
        return mat_;
    }
    std::size_t dim() const noexcept {
        return mat_.dim();
    }
    Strictness strictness() const noexcept {
        return strictness_;
    }
    double min_eigenvalue() const noexcept {
        return min_eigenvalue_;
    }
    bool is_positive() const noexcept {
        return min_eigenvalue_ >= -kNegativeClamp;
    }
    const std::optional<std::string> &positivity_warning() const noexcept {
        return positivity_warning_;
    }

    const Complex &operator()(std::size_t r, std::size_t c) const {
        return mat_(r, c);
    }

   private:
    ComplexMatrix mat_;
    Strictness strictness_;
    double min_eigenvalue_ = 0.0;
    std::optional<std::string> positivity_warning_;
};

/// Correlation coefficients of ρ = ¼(I + Σ c_i σ_i⊗σ_i).
struct XStateCoeffs {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    double c_plus() const noexcept {
        return c1 + c2;
    }
    double c_minus() const noexcept {
        return c1 - c2;
    }
    XStateCoeffs magnitudes() const noexcept {
        return {std::abs(c1), std::abs(c2), std::abs(c3)};
    }

    /// Closed-form spectrum ¼(1+c3+c⁻), ¼(1+c3−c⁻), ¼(1−c3+c⁺), ¼(1−c3−c⁺).
    std::array<double, 4> eigenvalues() const noexcept {
        return {0.25 * (1 + c3 + c_minus()), 0.25 * (1 + c3 - c_minus()), 0.25 * (1 - c3 + c_plus()),
                0.25 * (1 - c3 - c_plus())};
    }

    friend bool operator==(const XStateCoeffs &, const XStateCoeffs &) = default;
};

enum class PresetName { Bell, Werner, General, Custom };

inline std::string_view to_string(PresetName name) {
    switch (name) {
        case PresetName::Bell: return "bell";
        case PresetName::Werner: return "werner";
        case PresetName::General: return "general";
        case PresetName::Custom: return "custom";
    }
    return "unknown";
}

struct StatePreset {
    PresetName name = PresetName::Custom;
    XStateCoeffs coeffs;
    /// Closed-form evaluation substitutes |c_i| when set.
    bool magnitudes_mode = false;

    std::string label() const {
        if (name != PresetName::Custom) {
            return std::string(to_string(name));
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "custom:%g;%g;%g", coeffs.c1, coeffs.c2, coeffs.c3);
        return buf;
    }
};

/// Bell and Werner come with all-negative signs (the singlet family, which is
/// positive at these magnitudes). General keeps positive signs; no sign
/// assignment makes (0.7, 0.9, 0.4) a positive operator.
inline XStateCoeffs preset_coeffs(PresetName name) {
    switch (name) {
        case PresetName::Bell: return {-1.0, -1.0, -1.0};
        case PresetName::Werner: return {-0.8, -0.8, -0.8};
        case PresetName::General: return {0.7, 0.9, 0.4};
        case PresetName::Custom: break;
    }
    throw Error(ErrorCode::UnknownPreset, "custom has no fixed coefficients");
}

inline XStateCoeffs preset_coeffs(std::string_view name) {
    if (name == "bell") return preset_coeffs(PresetName::Bell);
    if (name == "werner") return preset_coeffs(PresetName::Werner);
    if (name == "general") return preset_coeffs(PresetName::General);
    throw Error(ErrorCode::UnknownPreset, std::string(name));
}

inline StatePreset make_preset(PresetName name) {
    return StatePreset{name, preset_coeffs(name), false};
}

inline void require_coeff_range(const XStateCoeffs &c) {
    for (double v : {c.c1, c.c2, c.c3}) {
        if (!std::isfinite(v) || std::abs(v) > 1.0) {
            throw Error(ErrorCode::UnphysicalState, "coefficient out of [-1, 1]: " + std::to_string(v));
        }
    }
}

/// Raw ¼(I + Σ c_i σ_i⊗σ_i) without any physicality checks.
inline ComplexMatrix x_state_matrix(const XStateCoeffs &c) {
    ComplexMatrix m(4);
    m(0, 0) = 0.25 * (1 + c.c3);
    m(1, 1) = 0.25 * (1 - c.c3);
    m(2, 2) = 0.25 * (1 - c.c3);
    m(3, 3) = 0.25 * (1 + c.c3);
    m(0, 3) = m(3, 0) = 0.25 * c.c_minus();
    m(1, 2) = m(2, 1) = 0.25 * c.c_plus();
    return m;
}

inline DensityMatrix build_x_state(const XStateCoeffs &c, Strictness strictness = Strictness::Strict) {
    require_coeff_range(c);
    if (strictness == Strictness::Strict) {
        const auto eig = c.eigenvalues();
        for (double e : eig) {
            if (e < -kNegativeClamp) {
                throw UnphysicalStateError("negative eigenvalue " + std::to_string(e), eig);
            }
        }
    }
    return DensityMatrix(x_state_matrix(c), strictness);
}

struct StateDiagnostics {
    double trace = 0.0;
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    bool is_x_form = false;
};

inline constexpr double kXFormTolerance = 1e-12;

/// True iff every entry off the diagonal and anti-diagonal is negligible.
inline bool is_x_form(const ComplexMatrix &m) {
    const std::size_t n = m.dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c && r + c != n - 1 && std::abs(m(r, c)) >= kXFormTolerance) {
                return false;
            }
        }
    }
    return true;
}

inline StateDiagnostics state_diagnostics(const ComplexMatrix &m) {
    StateDiagnostics d;
    d.trace = m.trace().real();
    d.hermiticity_residual = hermiticity_residual(m);
    d.min_eigenvalue = hermitian_eigenvalues(m).back();
    d.is_x_form = is_x_form(m);
    return d;
}

inline StateDiagnostics state_diagnostics(const DensityMatrix &rho) {
    return state_diagnostics(rho.matrix());
}

}  // namespace rindler
