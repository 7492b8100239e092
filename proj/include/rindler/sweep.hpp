#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "rindler/channels.hpp"
#include "rindler/concurrence.hpp"
#include "rindler/error.hpp"
#include "rindler/unruh.hpp"
#include "rindler/xstate.hpp"

namespace rindler {

enum class Param { Mu, P, R };

inline std::string_view to_string(Param param) {
    switch (param) {
        case Param::Mu: return "mu";
        case Param::P: return "p";
        case Param::R: return "r";
    }
    return "unknown";
}

/// Evenly spaced closed interval; count == 1 means the fixed value `start`.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    static Grid fixed(double value) {
        return {value, value, 1};
    }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(count);
        if (count == 1) {
            out.push_back(start);
            return out;
        }
        const double step = (stop - start) / static_cast<double>(count - 1);
        for (std::size_t k = 0; k + 1 < count; ++k) {
            out.push_back(start + step * static_cast<double>(k));
        }
        out.push_back(stop);
        return out;
    }
};

struct SweepSpec {
    std::vector<ChannelKind> channels;
    std::vector<StatePreset> states;
    Application application = Application::SingleCorrelatedUse;
    Grid mu = Grid::fixed(0.0);
    Grid p = Grid::fixed(0.0);
    Grid r = Grid::fixed(0.0);
    /// Closed form and/or an oracle method (Wootters or XShortcut).
    std::vector<Method> methods{Method::ClosedForm, Method::Wootters};
    Strictness strictness = Strictness::PaperConvention;
    Param plot_x = Param::Mu;
    std::string output_path;
};

struct SweepRow {
    double mu = 0.0;
    double p = 0.0;
    double r = 0.0;
    std::string channel;
    std::string state;
    double c_closed = std::numeric_limits<double>::quiet_NaN();
    double c_oracle = std::numeric_limits<double>::quiet_NaN();
    double delta = std::numeric_limits<double>::quiet_NaN();

    double param(Param which) const {
        switch (which) {
            case Param::Mu: return mu;
            case Param::P: return p;
            case Param::R: return r;
        }
        return 0.0;
    }
};

inline void validate_sweep_spec(const SweepSpec &spec) {
    auto fail = [](const std::string &why) { throw Error(ErrorCode::BadSweepSpec, why); };
    if (spec.channels.empty()) fail("no channels");
    if (spec.states.empty()) fail("no states");
    auto check = [&](const Grid &g, std::string_view name, double lo, double hi) {
        if (g.count == 0) fail(std::string(name) + " grid has zero points");
        for (double v : {g.start, g.stop}) {
            if (!std::isfinite(v) || v < lo || v > hi * (1 + 1e-15)) {
                fail(std::string(name) + " grid bound " + std::to_string(v) + " outside its domain");
            }
        }
    };
    check(spec.mu, "mu", 0.0, 1.0);
    check(spec.p, "p", 0.0, 1.0);
    check(spec.r, "r", 0.0, kMaxRindlerParam);
    for (const auto &s : spec.states) {
        try {
            require_coeff_range(s.coeffs);
        } catch (const Error &e) {
            fail(e.what());
        }
    }
}

inline bool has_method(const SweepSpec &spec, Method m) {
    return std::find(spec.methods.begin(), spec.methods.end(), m) != spec.methods.end();
}

namespace detail {

inline SweepRow evaluate_point(const SweepSpec &spec, ChannelKind kind, const StatePreset &state, double mu, double p,
                               double r) {
    SweepRow row;
    row.mu = mu;
    row.p = p;
    row.r = r;
    row.channel = std::string(to_string(kind));
    row.state = state.label();

    if (has_method(spec, Method::ClosedForm)) {
        try {
            row.c_closed = closed_form_concurrence(kind, state.coeffs, r, p, mu, state.magnitudes_mode).value;
        } catch (const ClosedFormDomainError &) {
            // Left as NaN; the row still carries the oracle value.
        }
    }
    const bool want_wootters = has_method(spec, Method::Wootters);
    if (want_wootters || has_method(spec, Method::XShortcut)) {
        const DensityMatrix out =
            apply_channel(unruh_transform(state.coeffs, r, spec.strictness), ChannelSpec{kind, p, mu, spec.application});
        row.c_oracle = (want_wootters && out.is_positive()) ? wootters_concurrence(out).value
                                                            : xstate_concurrence(out).value;
    }
    row.delta = std::abs(row.c_closed - row.c_oracle);
    return row;
}

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled by exactly one worker.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &w : workers) w.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

/// Evaluates the Cartesian product channel × state × μ × p × r (r fastest).
/// Row order is the grid order regardless of `threads`.
inline std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned threads = 0) {
    validate_sweep_spec(spec);
    const auto mus = spec.mu.values();
    const auto ps = spec.p.values();
    const auto rs = spec.r.values();
    const std::size_t per_panel = mus.size() * ps.size() * rs.size();
    const std::size_t total = spec.channels.size() * spec.states.size() * per_panel;

    std::vector<SweepRow> rows(total);
    detail::parallel_for(total, threads, [&](std::size_t idx) {
        std::size_t rest = idx;
        const std::size_t ir = rest % rs.size();
        rest /= rs.size();
        const std::size_t ip = rest % ps.size();
        rest /= ps.size();
        const std::size_t imu = rest % mus.size();
        rest /= mus.size();
        const std::size_t is = rest % spec.states.size();
        rest /= spec.states.size();
        const std::size_t ic = rest;
        rows[idx] = detail::evaluate_point(spec, spec.channels[ic], spec.states[is], mus[imu], ps[ip], rs[ir]);
    });
    return rows;
}

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t closed_form_failures = 0;  // rows whose closed form is NaN
    double max_delta = 0.0;                // NaN deltas count as +inf
    std::optional<std::size_t> argmax;
};

inline SweepSummary summarize(const std::vector<SweepRow> &rows) {
    SweepSummary s;
    s.rows = rows.size();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        double d = rows[k].delta;
        if (std::isnan(rows[k].c_closed)) {
            ++s.closed_form_failures;
        }
        if (std::isnan(d)) {
            d = std::numeric_limits<double>::infinity();
        }
        if (!s.argmax || d > s.max_delta) {
            s.max_delta = d;
            s.argmax = k;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Figure presets

enum class Figure { Fig1, Fig2, Fig3, Fig4, Fig5, Fig6 };

inline std::optional<Figure> parse_figure(std::string_view name) {
    if (name == "fig1") return Figure::Fig1;
    if (name == "fig2") return Figure::Fig2;
    if (name == "fig3") return Figure::Fig3;
    if (name == "fig4") return Figure::Fig4;
    if (name == "fig5") return Figure::Fig5;
    if (name == "fig6") return Figure::Fig6;
    return std::nullopt;
}

inline constexpr std::size_t kCurvePoints = 101;
inline constexpr std::size_t kSurfacePoints = 61;

inline SweepSpec figure_preset(Figure fig) {
    SweepSpec spec;
    spec.channels = {ChannelKind::AmplitudeDamping, ChannelKind::Depolarizing, ChannelKind::BitFlip};
    spec.states = {make_preset(PresetName::Bell), make_preset(PresetName::Werner), make_preset(PresetName::General)};
    const Grid unit_curve{0.0, 1.0, kCurvePoints};
    const Grid unit_surface{0.0, 1.0, kSurfacePoints};
    const Grid r_curves{0.0, kMaxRindlerParam, 3};  // 0, π/8, π/4
    switch (fig) {
        case Figure::Fig1:
            spec.mu = unit_curve;
            spec.p = Grid::fixed(0.3);
            spec.r = r_curves;
            spec.plot_x = Param::Mu;
            break;
        case Figure::Fig2:
            spec.mu = unit_curve;
            spec.p = Grid::fixed(0.7);
            spec.r = r_curves;
            spec.plot_x = Param::Mu;
            break;
        case Figure::Fig3:
            spec.mu = Grid::fixed(0.5);
            spec.p = unit_curve;
            spec.r = r_curves;
            spec.plot_x = Param::P;
            break;
        case Figure::Fig4:
            spec.mu = Grid::fixed(0.3);
            spec.p = unit_surface;
            spec.r = Grid{0.0, kMaxRindlerParam, kSurfacePoints};
            spec.plot_x = Param::P;
            break;
        case Figure::Fig5:
            spec.mu = Grid::fixed(0.7);
            spec.p = unit_surface;
            spec.r = Grid{0.0, kMaxRindlerParam, kSurfacePoints};
            spec.plot_x = Param::P;
            break;
        case Figure::Fig6:
            spec.mu = unit_surface;
            spec.p = unit_surface;
            spec.r = Grid::fixed(kMaxRindlerParam);
            spec.plot_x = Param::P;
            break;
    }
    return spec;
}

inline SweepSpec figure_preset(std::string_view name) {
    const auto fig = parse_figure(name);
    if (!fig) {
        throw Error(ErrorCode::BadSweepSpec, "unknown figure '" + std::string(name) + "'");
    }
    return figure_preset(*fig);
}

// ---------------------------------------------------------------------------
// Sudden-death boundary

inline constexpr double kDeadConcurrence = 1e-12;
inline constexpr std::size_t kEsdPrescanPoints = 200;

struct EsdQuery {
    ChannelKind channel = ChannelKind::Depolarizing;
    StatePreset state = make_preset(PresetName::Bell);
    Application application = Application::SingleCorrelatedUse;
    Strictness strictness = Strictness::PaperConvention;
    Method method = Method::Wootters;
    Param scan = Param::P;
    double scan_start = 0.0;
    double scan_stop = 1.0;
    /// Values for the two parameters that are not scanned.
    double mu = 0.0;
    double p = 0.0;
    double r = 0.0;
};

struct EsdResult {
    enum class Kind {
        Boundary,     // positive at start, dead from `boundary` on
        NoBoundary,   // positive over the whole scan
        AlwaysDead,   // zero over the whole scan
        Crossings,    // any other pattern; see `brackets`
    };
    Kind kind = Kind::NoBoundary;
    double boundary = std::numeric_limits<double>::quiet_NaN();
    /// Consecutive pre-scan points between which the alive/dead state flips.
    std::vector<std::pair<double, double>> brackets;
};

inline std::string_view to_string(EsdResult::Kind kind) {
    switch (kind) {
        case EsdResult::Kind::Boundary: return "Boundary";
        case EsdResult::Kind::NoBoundary: return "NoBoundary";
        case EsdResult::Kind::AlwaysDead: return "AlwaysDead";
        case EsdResult::Kind::Crossings: return "Crossings";
    }
    return "unknown";
}

/// Concurrence along the query's scan line.
inline double esd_concurrence(const EsdQuery &q, double x) {
    double mu = q.mu;
    double p = q.p;
    double r = q.r;
    switch (q.scan) {
        case Param::Mu: mu = x; break;
        case Param::P: p = x; break;
        case Param::R: r = x; break;
    }
    if (q.method == Method::ClosedForm) {
        return closed_form_concurrence(q.channel, q.state.coeffs, r, p, mu, q.state.magnitudes_mode).value;
    }
    const DensityMatrix out =
        apply_channel(unruh_transform(q.state.coeffs, r, q.strictness), ChannelSpec{q.channel, p, mu, q.application});
    if (q.method == Method::Wootters && out.is_positive()) {
        return wootters_concurrence(out).value;
    }
    return xstate_concurrence(out).value;
}

/// Shrinks [alive, dead] until it is at most `tol` wide; returns the dead end.
inline double bisect_death(const std::function<bool(double)> &is_dead, double alive, double dead, double tol) {
    while (std::abs(dead - alive) > tol) {
        const double mid = 0.5 * (alive + dead);
        if (is_dead(mid)) {
            dead = mid;
        } else {
            alive = mid;
        }
    }
    return dead;
}

inline EsdResult esd_boundary(const EsdQuery &q, double tol = 1e-6) {
    if (!(tol > 0.0) || !(q.scan_stop > q.scan_start)) {
        throw Error(ErrorCode::BadSweepSpec, "esd scan needs start < stop and a positive tolerance");
    }
    auto is_dead = [&](double x) { return esd_concurrence(q, x) <= kDeadConcurrence; };

    const Grid prescan{q.scan_start, q.scan_stop, kEsdPrescanPoints};
    const auto xs = prescan.values();
    std::vector<bool> dead(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        dead[k] = is_dead(xs[k]);
    }

    EsdResult result;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        if (dead[k] != dead[k + 1]) {
            result.brackets.emplace_back(xs[k], xs[k + 1]);
        }
    }

    if (result.brackets.empty()) {
        result.kind = dead.front() ? EsdResult::Kind::AlwaysDead : EsdResult::Kind::NoBoundary;
        return result;
    }
    if (result.brackets.size() == 1 && !dead.front() && dead.back()) {
        const auto [alive, first_dead] = result.brackets.front();
        // Stop at tol/2 so that boundary - tol lies on the alive side.
        result.boundary = bisect_death(is_dead, alive, first_dead, 0.5 * tol);
        result.kind = EsdResult::Kind::Boundary;
        return result;
    }
    result.kind = EsdResult::Kind::Crossings;
    return result;
}

}  // namespace rindler
