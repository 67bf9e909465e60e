#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fieldtrends/corpus.hpp"
#include "fieldtrends/jsonio.hpp"
#include "fieldtrends/metrics.hpp"
#include "fieldtrends/regress.hpp"

namespace fieldtrends {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

namespace detail {

inline constexpr int kSvgWidth = 960;
inline constexpr int kSvgHeight = 540;

inline constexpr std::string_view kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#2f4b7c", "#a05195",
};

// Tick positions at a step of 1, 2 or 5 times a power of ten: the smallest
// such step that yields at most `target` intervals over [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target) {
    std::vector<double> ticks;
    const double span = hi - lo;
    if (!(span > 0.0)) return ticks;
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (const double mult : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        if (span / (step * mult) <= target) {
            step *= mult;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step)
        ticks.push_back(v == 0.0 ? 0.0 : v);  // normalizes -0
    return ticks;
}

inline std::string px(double v) { return format_fixed(v, 2); }

struct PlotFrame {
    double left, right, top, bottom;  // pixel edges of the data area
    double xlo, xhi, ylo, yhi;        // data ranges

    double x(double v) const { return left + (v - xlo) / (xhi - xlo) * (right - left); }
    double y(double v) const { return bottom - (v - ylo) / (yhi - ylo) * (bottom - top); }
};

inline void draw_axes(std::string& svg, const PlotFrame& frame, std::string_view x_label,
                      std::string_view y_label) {
    svg += "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<line x1=\"" + px(frame.left) + "\" y1=\"" + px(frame.bottom) + "\" x2=\"" +
           px(frame.right) + "\" y2=\"" + px(frame.bottom) + "\"/>\n";
    svg += "<line x1=\"" + px(frame.left) + "\" y1=\"" + px(frame.top) + "\" x2=\"" +
           px(frame.left) + "\" y2=\"" + px(frame.bottom) + "\"/>\n";
    svg += "</g>\n";

    svg += "<g font-size=\"12\" fill=\"#333333\" text-anchor=\"middle\">\n";
    for (const double tick : nice_ticks(frame.xlo, frame.xhi, 8)) {
        const std::string x = px(frame.x(tick));
        svg += "<line x1=\"" + x + "\" y1=\"" + px(frame.bottom) + "\" x2=\"" + x + "\" y2=\"" +
               px(frame.bottom + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"" + px(frame.bottom + 20) + "\">" +
               format_shortest(tick) + "</text>\n";
    }
    svg += "<text x=\"" + px((frame.left + frame.right) / 2) + "\" y=\"" +
           px(frame.bottom + 38) + "\">" + std::string(x_label) + "</text>\n";
    svg += "</g>\n";

    svg += "<g font-size=\"12\" fill=\"#333333\" text-anchor=\"end\">\n";
    for (const double tick : nice_ticks(frame.ylo, frame.yhi, 6)) {
        const std::string y = px(frame.y(tick));
        svg += "<line x1=\"" + px(frame.left - 5) + "\" y1=\"" + y + "\" x2=\"" +
               px(frame.left) + "\" y2=\"" + y + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + px(frame.left - 8) + "\" y=\"" + px(frame.y(tick) + 4) + "\">" +
               format_shortest(tick) + "</text>\n";
    }
    svg += "</g>\n";
    svg += "<text font-size=\"12\" fill=\"#333333\" text-anchor=\"middle\" transform=\"translate(16 " +
           px((frame.top + frame.bottom) / 2) + ") rotate(-90)\">" + std::string(y_label) +
           "</text>\n";
}

inline std::string svg_open(std::string_view title) {
    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"540\" "
           "viewBox=\"0 0 960 540\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"960\" height=\"540\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"480\" y=\"24\" font-size=\"16\" fill=\"#111111\" text-anchor=\"middle\">" +
           std::string(title) + "</text>\n";
    return svg;
}

}  // namespace detail

// Yearly totals as a polyline, with the fitted model sampled as a smooth path
// on top when a fit is given. 960x540, fixed margins, no randomness anywhere.
inline std::string trend_chart_svg(const YearSeries& data, const BestFit* best,
                                   std::string_view title, std::string_view y_label) {
    if (data.empty()) raise(Errc::EmptyRange, "no points to chart");
    detail::PlotFrame frame{70, 940, 44, 490, 0, 0, 0, 0};
    frame.xlo = data.points().front().year;
    frame.xhi = data.points().back().year;
    if (frame.xhi == frame.xlo) {
        frame.xlo -= 1;
        frame.xhi += 1;
    }
    double ymax = 0.0;
    for (const auto& point : data.points()) ymax = std::max(ymax, point.value);
    if (best) {
        for (const auto& point : data.points()) {
            const double v = predict(best->fit, static_cast<double>(point.year));
            if (std::isfinite(v)) ymax = std::max(ymax, v);
        }
    }
    if (ymax <= 0.0) ymax = 1.0;
    frame.ylo = 0.0;
    frame.yhi = ymax * 1.05;

    std::string svg = detail::svg_open(xml_escape(title));
    detail::draw_axes(svg, frame, "year", y_label);

    std::string points;
    for (const auto& point : data.points()) {
        if (!points.empty()) points += ' ';
        points += detail::px(frame.x(point.year)) + ',' + detail::px(frame.y(point.value));
    }
    svg += "<polyline fill=\"none\" stroke=\"#4e79a7\" stroke-width=\"2\" points=\"" + points +
           "\"/>\n";

    if (best) {
        std::string path;
        const int samples = 200;
        for (int i = 0; i <= samples; ++i) {
            const double t = frame.xlo + (frame.xhi - frame.xlo) * i / samples;
            double v = predict(best->fit, t);
            if (!std::isfinite(v)) continue;
            v = std::clamp(v, frame.ylo, frame.yhi);
            path += path.empty() ? "M" : " L";
            path += detail::px(frame.x(t)) + ' ' + detail::px(frame.y(v));
        }
        svg += "<path fill=\"none\" stroke=\"#e15759\" stroke-width=\"2\" stroke-dasharray=\"6 3\" d=\"" +
               path + "\"/>\n";
        svg += "<text x=\"76\" y=\"58\" font-size=\"12\" fill=\"#e15759\">fitted: " +
               std::string(model_kind_name(best->kind)) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

// Stacked per-year discipline weights: one closed path per discipline, stacked
// bottom-up in lexicographic order, plus a legend column on the right.
inline std::string weights_chart_svg(const WeightMatrix& matrix, std::string_view title) {
    if (matrix.empty()) raise(Errc::EmptyRange, "no nonzero years to chart");
    std::set<std::string> universe;
    for (const auto& [year, weights] : matrix)
        for (const auto& [discipline, weight] : weights) universe.insert(discipline);

    detail::PlotFrame frame{70, 700, 44, 490, 0, 0, 0.0, 1.0};
    frame.xlo = matrix.begin()->first;
    frame.xhi = matrix.rbegin()->first;
    if (frame.xhi == frame.xlo) {
        frame.xlo -= 1;
        frame.xhi += 1;
    }

    std::string svg = detail::svg_open(xml_escape(title));
    detail::draw_axes(svg, frame, "year", "weight");

    std::vector<int> years;
    years.reserve(matrix.size());
    for (const auto& [year, weights] : matrix) years.push_back(year);

    std::map<int, double> base;
    for (const int year : years) base[year] = 0.0;

    int color = 0;
    for (const auto& discipline : universe) {
        std::vector<double> lower, upper;
        for (const int year : years) {
            const auto& weights = matrix.at(year);
            const auto it = weights.find(discipline);
            const double w = it == weights.end() ? 0.0 : it->second;
            lower.push_back(base[year]);
            upper.push_back(base[year] + w);
            base[year] = upper.back();
        }
        std::string path;
        for (std::size_t i = 0; i < years.size(); ++i) {
            path += path.empty() ? "M" : " L";
            path += detail::px(frame.x(years[i])) + ' ' + detail::px(frame.y(upper[i]));
        }
        for (std::size_t i = years.size(); i-- > 0;) {
            path += " L" + detail::px(frame.x(years[i])) + ' ' + detail::px(frame.y(lower[i]));
        }
        path += " Z";
        const auto fill = detail::kPalette[color % std::size(detail::kPalette)];
        svg += "<path fill=\"" + std::string(fill) + "\" fill-opacity=\"0.85\" stroke=\"none\" d=\"" +
               path + "\"/>\n";
        ++color;
    }

    color = 0;
    double legend_y = 50.0;
    for (const auto& discipline : universe) {
        const auto fill = detail::kPalette[color % std::size(detail::kPalette)];
        svg += "<rect x=\"712\" y=\"" + detail::px(legend_y) +
               "\" width=\"12\" height=\"12\" fill=\"" + std::string(fill) + "\"/>\n";
        svg += "<text x=\"730\" y=\"" + detail::px(legend_y + 10) +
               "\" font-size=\"11\" fill=\"#333333\">" + xml_escape(discipline) + "</text>\n";
        legend_y += 16.0;
        ++color;
        if (legend_y > 520.0) break;
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace fieldtrends
