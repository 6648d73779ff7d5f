#ifndef OGTT_SVG_HPP
#define OGTT_SVG_HPP

// Minimal static SVG plots: line/scatter panels with axes and tick labels.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace ogtt::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool markers = false;
    bool dashed = false;
    std::string marker = "circle";  // circle | ring | triangle | diamond | square
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<std::pair<double, std::string>> vlines;  // x position, colour
};

namespace detail {

inline std::string marker_shape(const std::string& kind, double x, double y, const std::string& color) {
    constexpr double r = 3.5;
    if (kind == "ring")
        return fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="none" stroke="{}"/>)", x, y, r, color);
    if (kind == "triangle")
        return fmt::format(R"(<polygon points="{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}" fill="none" stroke="{}"/>)", x,
                           y - r, x - r, y + r, x + r, y + r, color);
    if (kind == "diamond")
        return fmt::format(
            R"(<polygon points="{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}" fill="none" stroke="{}"/>)", x,
            y - r, x + r, y, x, y + r, x - r, y, color);
    if (kind == "square")
        return fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{}" height="{}" fill="{}"/>)", x - r, y - r, 2 * r,
                           2 * r, color);
    return fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="{}"/>)", x, y, r, color);
}

inline std::string panel_body(const Panel& p, double ox, double oy, double w, double h) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : p.series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (!(ymax > ymin)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double pad_y = 0.05 * (ymax - ymin);
    ymin -= pad_y;
    ymax += pad_y;

    const double left = ox + 55, right = ox + w - 10, top = oy + 25, bottom = oy + h - 35;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    std::string out;
    out += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#444"/>)",
                       left, top, right - left, bottom - top);
    out += '\n';
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + k * (xmax - xmin) / 4;
        const double yv = ymin + k * (ymax - ymin) / 4;
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="middle">{:.3g}</text>)", sx(xv),
                           bottom + 12, xv);
        out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="end">{:.3g}</text>)", left - 3,
                           sy(yv) + 3, yv);
        out += '\n';
    }
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="11" text-anchor="middle">{}</text>)",
                       (left + right) / 2, oy + 15, p.title);
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="middle">{}</text>)",
                       (left + right) / 2, bottom + 27, p.x_label);
    out += fmt::format(
        R"svg(<text x="{:.2f}" y="{:.2f}" font-size="10" text-anchor="middle" transform="rotate(-90 {:.2f} {:.2f})">{}</text>)svg",
        ox + 14, (top + bottom) / 2, ox + 14, (top + bottom) / 2, p.y_label);
    out += '\n';
    for (const auto& [xv, color] : p.vlines) {
        if (xv < xmin || xv > xmax)
            continue;
        out += fmt::format(R"(<line x1="{0:.2f}" y1="{1:.2f}" x2="{0:.2f}" y2="{2:.2f}" stroke="{3}"/>)", sx(xv), top,
                           bottom, color);
        out += '\n';
    }
    for (const auto& s : p.series) {
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out += marker_shape(s.marker, sx(s.x[i]), sy(s.y[i]), s.color);
            out += '\n';
        } else if (!s.x.empty()) {
            std::string pts;
            for (std::size_t i = 0; i < s.x.size(); ++i)
                pts += fmt::format("{:.2f},{:.2f} ", sx(s.x[i]), sy(s.y[i]));
            out += fmt::format(R"(<polyline points="{}" fill="none" stroke="{}" stroke-width="1.2"{}/>)", pts, s.color,
                               s.dashed ? R"( stroke-dasharray="4 3")" : "");
            out += '\n';
        }
    }
    return out;
}

} // namespace detail

/// Lays panels out on a grid with `columns` panels per row.
inline std::string render(const std::vector<Panel>& panels, int columns = 2, double panel_w = 320,
                          double panel_h = 240) {
    const int rows = panels.empty() ? 1 : static_cast<int>((panels.size() + columns - 1) / columns);
    std::string out = fmt::format(
        R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif">)"
        "\n",
        columns * panel_w, rows * panel_h);
    out += R"(<rect width="100%" height="100%" fill="white"/>)";
    out += '\n';
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = static_cast<double>(i % columns) * panel_w;
        const double oy = static_cast<double>(i / columns) * panel_h;
        out += detail::panel_body(panels[i], ox, oy, panel_w, panel_h);
    }
    out += "</svg>\n";
    return out;
}

} // namespace ogtt::svg

#endif // OGTT_SVG_HPP
