#include "rentscope/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rentscope/errors.hpp"

namespace rentscope::svg {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double parse_num(const std::string& field, size_t row, const std::string& what) {
    double v = 0;
    const char* b = field.data();
    const char* e = b + field.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
        throw DataError("chart: row " + std::to_string(row) + " has non-numeric " + what + " '" +
                        field + "'");
    return v;
}

// round tick labels to a compact form
std::string tick_label(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    return fmt(v);
}

struct Frame {
    double x0, y0, w, h;  // plot area in svg coordinates (y grows downward)
};

void open_svg(std::ostringstream& out, const ChartSpec& spec) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        out << "<text x=\"" << spec.width / 2
            << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
            << esc(spec.title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const ChartSpec& spec, const Frame& f) {
    out << "<line x1=\"" << fmt(f.x0) << "\" y1=\"" << fmt(f.y0 + f.h) << "\" x2=\""
        << fmt(f.x0 + f.w) << "\" y2=\"" << fmt(f.y0 + f.h)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt(f.x0) << "\" y1=\"" << fmt(f.y0) << "\" x2=\"" << fmt(f.x0)
        << "\" y2=\"" << fmt(f.y0 + f.h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (!spec.x_label.empty())
        out << "<text x=\"" << fmt(f.x0 + f.w / 2) << "\" y=\"" << spec.height - 8
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << esc(spec.x_label) << "</text>\n";
    if (!spec.y_label.empty())
        out << "<text x=\"16\" y=\"" << fmt(f.y0 + f.h / 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
            << " transform=\"rotate(-90 16 " << fmt(f.y0 + f.h / 2) << ")\">" << esc(spec.y_label)
            << "</text>\n";
}

void y_ticks(std::ostringstream& out, const Frame& f, double y_min, double y_max) {
    for (int i = 0; i <= 4; ++i) {
        double value = y_min + (y_max - y_min) * i / 4.0;
        double y = f.y0 + f.h - (y_max > y_min ? (value - y_min) / (y_max - y_min) * f.h : 0);
        out << "<line x1=\"" << fmt(f.x0 - 4) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(f.x0)
            << "\" y2=\"" << fmt(y) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(f.x0 - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << tick_label(value) << "</text>\n";
    }
}

std::string render_bar(const csv::Table& data, const ChartSpec& spec) {
    struct BarRow {
        std::string category;
        double value;
    };
    std::vector<BarRow> rows;
    for (size_t i = 0; i < data.rows.size(); ++i) {
        const auto& r = data.rows[i];
        rows.push_back({r.at(spec.x_column), parse_num(r.at(spec.y_column), i + 2, "value")});
    }
    std::sort(rows.begin(), rows.end(),
              [](const BarRow& a, const BarRow& b) { return a.category < b.category; });

    double y_max = 0;
    for (const auto& r : rows) y_max = std::max(y_max, r.value);
    if (y_max <= 0) y_max = 1;

    Frame f{kMarginLeft, kMarginTop, double(spec.width - kMarginLeft - kMarginRight),
            double(spec.height - kMarginTop - kMarginBottom)};
    std::ostringstream out;
    open_svg(out, spec);
    draw_axes(out, spec, f);
    y_ticks(out, f, 0, y_max);

    const double slot = f.w / static_cast<double>(rows.size());
    const double bar_w = slot * 0.7;
    for (size_t i = 0; i < rows.size(); ++i) {
        double h = rows[i].value / y_max * f.h;
        double x = f.x0 + slot * static_cast<double>(i) + (slot - bar_w) / 2;
        double y = f.y0 + f.h - h;
        out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(bar_w)
            << "\" height=\"" << fmt(h) << "\" fill=\"steelblue\"/>\n";
        out << "<text x=\"" << fmt(x + bar_w / 2) << "\" y=\"" << fmt(f.y0 + f.h + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << esc(rows[i].category) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_xy(const csv::Table& data, const ChartSpec& spec) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < data.rows.size(); ++i) {
        const auto& r = data.rows[i];
        pts.emplace_back(parse_num(r.at(spec.x_column), i + 2, "x"),
                         parse_num(r.at(spec.y_column), i + 2, "y"));
    }
    std::sort(pts.begin(), pts.end());

    double x_min = pts.front().first, x_max = pts.back().first;
    double y_min = pts.front().second, y_max = y_min;
    for (const auto& [x, y] : pts) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (spec.identity_line) {
        // identity line spans the shared range, so include both axes' extents
        x_min = std::min(x_min, y_min);
        y_min = x_min;
        x_max = std::max(x_max, y_max);
        y_max = x_max;
    }
    if (x_max <= x_min) x_max = x_min + 1;
    if (y_max <= y_min) y_max = y_min + 1;

    Frame f{kMarginLeft, kMarginTop, double(spec.width - kMarginLeft - kMarginRight),
            double(spec.height - kMarginTop - kMarginBottom)};
    auto sx = [&](double x) { return f.x0 + (x - x_min) / (x_max - x_min) * f.w; };
    auto sy = [&](double y) { return f.y0 + f.h - (y - y_min) / (y_max - y_min) * f.h; };

    std::ostringstream out;
    open_svg(out, spec);
    draw_axes(out, spec, f);
    y_ticks(out, f, y_min, y_max);
    for (int i = 0; i <= 4; ++i) {
        double value = x_min + (x_max - x_min) * i / 4.0;
        double x = sx(value);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(f.y0 + f.h) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(f.y0 + f.h + 4) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(f.y0 + f.h + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << tick_label(value) << "</text>\n";
    }

    if (spec.identity_line)
        out << "<line x1=\"" << fmt(sx(x_min)) << "\" y1=\"" << fmt(sy(x_min)) << "\" x2=\""
            << fmt(sx(x_max)) << "\" y2=\"" << fmt(sy(x_max))
            << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";

    if (spec.kind == ChartKind::Line) {
        out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) out << ' ';
            out << fmt(sx(pts[i].first)) << ',' << fmt(sy(pts[i].second));
        }
        out << "\"/>\n";
    } else {
        for (const auto& [x, y] : pts)
            out << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
                << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_chart(const csv::Table& data, const ChartSpec& spec) {
    if (data.rows.empty()) throw DataError("nothing to plot");
    size_t need = static_cast<size_t>(std::max(spec.x_column, spec.y_column)) + 1;
    if (data.header.size() < need) throw DataError("chart: table has too few columns");
    for (const auto& r : data.rows)
        if (r.size() < need) throw DataError("chart: ragged table row");

    if (spec.kind == ChartKind::Bar) return render_bar(data, spec);
    return render_xy(data, spec);
}

}  // namespace rentscope::svg
