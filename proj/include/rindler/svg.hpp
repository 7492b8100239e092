#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rindler/csv.hpp"
#include "rindler/error.hpp"
#include "rindler/sweep.hpp"

namespace rindler {

/// Fields that may identify a plotted series.
enum class SeriesField { Channel, State, Mu, P, R };

enum class PlotValue { Oracle, Closed };

struct PlotOptions {
    double width = 900;
    double height = 560;
    PlotValue value = PlotValue::Oracle;
    std::string title;
};

namespace detail {

inline std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

inline std::string xml_escape(const std::string &s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string series_label(const SweepRow &row, const std::vector<SeriesField> &fields) {
    std::string label;
    for (SeriesField f : fields) {
        if (!label.empty()) label += ' ';
        switch (f) {
            case SeriesField::Channel: label += row.channel; break;
            case SeriesField::State: label += row.state; break;
            case SeriesField::Mu: label += "mu=" + format_number(row.mu); break;
            case SeriesField::P: label += "p=" + format_number(row.p); break;
            case SeriesField::R: label += "r=" + format_number(row.r); break;
        }
    }
    return label;
}

inline bool param_is_series_field(Param p, const std::vector<SeriesField> &fields) {
    const SeriesField f = p == Param::Mu ? SeriesField::Mu : p == Param::P ? SeriesField::P : SeriesField::R;
    return std::find(fields.begin(), fields.end(), f) != fields.end();
}

inline constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace detail

/// Line plot of concurrence against `x_param`, one polyline per distinct
/// combination of `series_fields`. Within a series only `x_param` may vary.
inline std::string render_svg_lineplot(const std::vector<SweepRow> &rows, Param x_param,
                                       const std::vector<SeriesField> &series_fields, const PlotOptions &opts = {}) {
    struct Series {
        std::string label;
        const SweepRow *first = nullptr;
        std::vector<std::pair<double, double>> points;
    };
    std::vector<Series> series;
    std::map<std::string, std::size_t> index;
    for (const auto &row : rows) {
        const std::string label = detail::series_label(row, series_fields);
        auto [it, inserted] = index.emplace(label, series.size());
        if (inserted) {
            series.push_back(Series{label, &row, {}});
        }
        Series &s = series[it->second];
        for (Param other : {Param::Mu, Param::P, Param::R}) {
            if (other == x_param || detail::param_is_series_field(other, series_fields)) continue;
            if (row.param(other) != s.first->param(other)) {
                throw Error(ErrorCode::BadPlotRequest, "series '" + label + "' varies in " +
                                                           std::string(to_string(other)) + " as well as " +
                                                           std::string(to_string(x_param)));
            }
        }
        const double y = opts.value == PlotValue::Oracle ? row.c_oracle : row.c_closed;
        s.points.emplace_back(row.param(x_param), y);
    }

    double x_min = 0.0;
    double x_max = 1.0;
    if (!rows.empty()) {
        x_min = x_max = rows.front().param(x_param);
        for (const auto &row : rows) {
            x_min = std::min(x_min, row.param(x_param));
            x_max = std::max(x_max, row.param(x_param));
        }
        if (x_max <= x_min) x_max = x_min + 1.0;
    }

    const double W = opts.width, H = opts.height;
    const double left = 70, right = 260, top = 40, bottom = 60;
    const double plot_w = W - left - right;
    const double plot_h = H - top - bottom;
    auto map_x = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto map_y = [&](double y) { return top + (1.0 - y) * plot_h; };
    using detail::fixed3;

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed3(W) << "\" height=\""
      << fixed3(H) << "\" viewBox=\"0 0 " << fixed3(W) << ' ' << fixed3(H) << "\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << fixed3(W) << "\" height=\"" << fixed3(H)
      << "\" fill=\"white\" stroke=\"none\"/>\n";
    if (!opts.title.empty()) {
        s << "<text x=\"" << fixed3(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
          << detail::xml_escape(opts.title) << "</text>\n";
    }

    // Axes with five ticks each.
    s << "<line x1=\"" << fixed3(left) << "\" y1=\"" << fixed3(top) << "\" x2=\"" << fixed3(left) << "\" y2=\""
      << fixed3(top + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s << "<line x1=\"" << fixed3(left) << "\" y1=\"" << fixed3(top + plot_h) << "\" x2=\"" << fixed3(left + plot_w)
      << "\" y2=\"" << fixed3(top + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x_min + (x_max - x_min) * k / 4.0;
        const double px = map_x(fx);
        s << "<line x1=\"" << fixed3(px) << "\" y1=\"" << fixed3(top + plot_h) << "\" x2=\"" << fixed3(px)
          << "\" y2=\"" << fixed3(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fixed3(px) << "\" y=\"" << fixed3(top + plot_h + 20)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << format_number(fx)
          << "</text>\n";
        const double fy = k / 4.0;
        const double py = map_y(fy);
        s << "<line x1=\"" << fixed3(left - 5) << "\" y1=\"" << fixed3(py) << "\" x2=\"" << fixed3(left)
          << "\" y2=\"" << fixed3(py) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fixed3(left - 8) << "\" y=\"" << fixed3(py + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << format_number(fy)
          << "</text>\n";
    }
    s << "<text x=\"" << fixed3(left + plot_w / 2) << "\" y=\"" << fixed3(H - 15)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" << to_string(x_param)
      << "</text>\n";
    s << "<text x=\"18\" y=\"" << fixed3(top + plot_h / 2) << "\" font-family=\"sans-serif\" font-size=\"14\" "
      << "text-anchor=\"middle\" transform=\"rotate(-90 18 " << fixed3(top + plot_h / 2) << ")\">concurrence</text>\n";

    const std::size_t palette_size = std::size(detail::kPalette);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char *color = detail::kPalette[k % palette_size];
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto &[x, y] : series[k].points) {
            if (std::isnan(y)) continue;
            if (!first) s << ' ';
            s << fixed3(map_x(x)) << ',' << fixed3(map_y(std::clamp(y, 0.0, 1.0)));
            first = false;
        }
        s << "\"/>\n";
        const double ly = top + 14.0 * static_cast<double>(k);
        s << "<line x1=\"" << fixed3(left + plot_w + 15) << "\" y1=\"" << fixed3(ly) << "\" x2=\""
          << fixed3(left + plot_w + 35) << "\" y2=\"" << fixed3(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << fixed3(left + plot_w + 40) << "\" y=\"" << fixed3(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << detail::xml_escape(series[k].label) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

inline void emit_svg_lineplot(const std::vector<SweepRow> &rows, Param x_param,
                              const std::vector<SeriesField> &series_fields, const std::string &path,
                              const PlotOptions &opts = {}) {
    write_text_file(path, render_svg_lineplot(rows, x_param, series_fields, opts));
}

}  // namespace rindler
