#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "rindler/error.hpp"
#include "rindler/qmat.hpp"
#include "rindler/xstate.hpp"

namespace rindler {

enum class ChannelKind { AmplitudeDamping, Depolarizing, BitFlip };

inline std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping: return "ad";
        case ChannelKind::Depolarizing: return "dep";
        case ChannelKind::BitFlip: return "bf";
    }
    return "unknown";
}

/// How the correlated two-qubit map is used on the Alice–Rob pair.
/// `SingleCorrelatedUse` applies it once; `DoubleStreamed` applies it twice
/// in succession (composite operators A_k2·A_k1).
enum class Application { SingleCorrelatedUse, DoubleStreamed };

inline std::string_view to_string(Application app) {
    return app == Application::SingleCorrelatedUse ? "single" : "double";
}

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Depolarizing;
    double p = 0.0;
    double mu = 0.0;
    Application application = Application::SingleCorrelatedUse;
};

inline void require_probability(double x, std::string_view name) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        throw Error(ErrorCode::BadProbability, std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
    }
}

/// A weighted mixture of Kraus families: ρ ↦ Σ_b w_b Σ_k K ρ K†.
/// Plain channels have a single branch of weight 1.
struct KrausBranch {
    double weight = 1.0;
    std::vector<ComplexMatrix> ops;
};

class KrausSet {
   public:
    KrausSet(std::size_t dim, std::vector<KrausBranch> branches) : dim_(dim), branches_(std::move(branches)) {
    }

    KrausSet(std::size_t dim, std::vector<ComplexMatrix> ops) : dim_(dim) {
        branches_.push_back(KrausBranch{1.0, std::move(ops)});
    }

    std::size_t dim() const noexcept {
        return dim_;
    }
    const std::vector<KrausBranch> &branches() const noexcept {
        return branches_;
    }

    /// All operators flattened with √weight folded in; same channel.
    std::vector<ComplexMatrix> scaled_ops() const {
        std::vector<ComplexMatrix> out;
        for (const auto &b : branches_) {
            const double s = std::sqrt(b.weight);
            for (const auto &k : b.ops) {
                out.push_back(k * Complex(s));
            }
        }
        return out;
    }

    /// max |Σ w K†K − I|.
    double completeness_residual() const {
        ComplexMatrix sum(dim_);
        for (const auto &b : branches_) {
            for (const auto &k : b.ops) {
                sum += (k.adjoint() * k) * Complex(b.weight);
            }
        }
        return max_abs_diff(sum, ComplexMatrix::identity(dim_));
    }

    ComplexMatrix apply(const ComplexMatrix &rho) const {
        ComplexMatrix out(dim_);
        for (const auto &b : branches_) {
            for (const auto &k : b.ops) {
                out += (k * rho * k.adjoint()) * Complex(b.weight);
            }
        }
        return out;
    }

   private:
    std::size_t dim_;
    std::vector<KrausBranch> branches_;
};

/// Single-qubit Kraus operators for each channel kind.
inline KrausSet single_qubit_kraus(ChannelKind kind, double p) {
    require_probability(p, "p");
    switch (kind) {
        case ChannelKind::AmplitudeDamping:
            return KrausSet(2, std::vector<ComplexMatrix>{{{1.0, 0.0}, {0.0, std::sqrt(1 - p)}},
                                                          {{0.0, std::sqrt(p)}, {0.0, 0.0}}});
        case ChannelKind::Depolarizing:
            return KrausSet(2, std::vector<ComplexMatrix>{pauli(0) * Complex(std::sqrt(1 - 0.75 * p)),
                                                          pauli(1) * Complex(std::sqrt(p / 4)),
                                                          pauli(2) * Complex(std::sqrt(p / 4)),
                                                          pauli(3) * Complex(std::sqrt(p / 4))});
        case ChannelKind::BitFlip:
            return KrausSet(2, std::vector<ComplexMatrix>{pauli(0) * Complex(std::sqrt(1 - p)),
                                                          pauli(1) * Complex(std::sqrt(p))});
    }
    throw Error(ErrorCode::BadProbability, "unknown channel kind");
}

/// Error distribution over (I, σ_x, σ_y, σ_z) for the Pauli-type channels.
inline std::array<double, 4> pauli_probabilities(ChannelKind kind, double p) {
    require_probability(p, "p");
    switch (kind) {
        case ChannelKind::Depolarizing: return {1 - 0.75 * p, p / 4, p / 4, p / 4};
        case ChannelKind::BitFlip: return {1 - p, p, 0.0, 0.0};
        case ChannelKind::AmplitudeDamping: break;
    }
    throw Error(ErrorCode::NotAPauliChannel, "amplitude damping has no Pauli error distribution");
}

/// Two-qubit Pauli channel with partial memory: operator (i, j) at index
/// 4i + j is √(p_i[(1−μ)p_j + μδ_ij]) σ_i⊗σ_j. Zero-weight operators are kept.
inline KrausSet correlated_pauli_kraus(ChannelKind kind, double p, double mu) {
    const auto probs = pauli_probabilities(kind, p);
    require_probability(mu, "mu");
    std::vector<ComplexMatrix> ops;
    ops.reserve(16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = probs[i] * ((1 - mu) * probs[j] + (i == j ? mu : 0.0));
            ops.push_back(tensor(pauli(i), pauli(j)) * Complex(std::sqrt(std::max(0.0, w))));
        }
    }
    return KrausSet(4, std::move(ops));
}

/// Amplitude damping with memory: with weight 1−μ the pair sees independent
/// single-qubit damping; with weight μ it sees the correlated pair
/// {diag(cos χ, 1, 1, 1), sin χ |11⟩⟨00|} where sin χ = √p.
inline KrausSet correlated_ad_channel(double p, double mu) {
    require_probability(p, "p");
    require_probability(mu, "mu");
    const KrausSet single = single_qubit_kraus(ChannelKind::AmplitudeDamping, p);
    const auto &a = single.branches().front().ops;

    KrausBranch uncorrelated{1 - mu, {}};
    for (const auto &left : a) {
        for (const auto &right : a) {
            uncorrelated.ops.push_back(tensor(left, right));
        }
    }

    const double sin_chi = std::sqrt(p);
    const double cos_chi = std::sqrt(1 - p);
    ComplexMatrix a00 = ComplexMatrix::identity(4);
    a00(0, 0) = cos_chi;
    ComplexMatrix a11(4);
    a11(3, 0) = sin_chi;
    KrausBranch correlated{mu, {a00, a11}};

    return KrausSet(4, std::vector<KrausBranch>{std::move(uncorrelated), std::move(correlated)});
}

inline KrausSet correlated_kraus(ChannelKind kind, double p, double mu) {
    if (kind == ChannelKind::AmplitudeDamping) {
        return correlated_ad_channel(p, mu);
    }
    return correlated_pauli_kraus(kind, p, mu);
}

inline constexpr double kCompletenessTolerance = 1e-12;

/// Operator-sum application of the correlated channel to a two-qubit state.
inline DensityMatrix apply_channel(const DensityMatrix &rho, const ChannelSpec &spec) {
    if (rho.dim() != 4) {
        throw Error(ErrorCode::BadPartition, "channels act on two-qubit (dim 4) states");
    }
    const KrausSet set = correlated_kraus(spec.kind, spec.p, spec.mu);
    const double residual = set.completeness_residual();
    if (residual > kCompletenessTolerance) {
        throw Error(ErrorCode::ChannelNotTracePreserving, "completeness residual " + std::to_string(residual));
    }
    ComplexMatrix out = set.apply(rho.matrix());
    if (spec.application == Application::DoubleStreamed) {
        out = set.apply(out);
    }
    return DensityMatrix(std::move(out), rho.strictness());
}

}  // namespace rindler
