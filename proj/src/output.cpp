#include "dqsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

namespace dqsim {

std::string format_real(double value) {
    if (value == 0.0) return "0"; // normalize -0
    return fmt::format("{:.12g}", value);
}

std::string build_id() {
#ifdef DQSIM_BUILD_ID
    return DQSIM_BUILD_ID;
#else
    return "dev";
#endif
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    for (const auto& line : table.metadata) out << "# " << line << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::runtime_error(fmt::format("csv row width {} != {} columns in '{}'",
                                                 row.size(), table.columns.size(), path));
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_real(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error(fmt::format("write failure on '{}'", path));
}

namespace {

constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kLeft = 72.0, kRight = 620.0, kTop = 42.0, kBottom = 386.0;

const char* stroke_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#000000",
                                    "#9467bd", "#ff7f0e"};
    return palette[i % 6];
}

const char* stroke_dash(std::size_t i) {
    // solid, dotted, dashed, dash-dot — mirrors the usual curve-style rotation
    static const char* dashes[] = {"", "1.5,3.5", "7,4", "9,4,2,4", "4,3", "12,4"};
    return dashes[i % 6];
}

double nice_step(double range) {
    if (!(range > 0.0)) return 1.0;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double factor = 10.0;
    if (norm < 1.5) factor = 1.0;
    else if (norm < 3.5) factor = 2.0;
    else if (norm < 7.5) factor = 5.0;
    return factor * mag;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    return fmt::format("{:g}", v);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

} // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& c : spec.curves) {
        for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i) {
            if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
            xmin = std::min(xmin, c.x[i]);
            xmax = std::max(xmax, c.x[i]);
            ymin = std::min(ymin, c.y[i]);
            ymax = std::max(ymax, c.y[i]);
        }
    }
    if (!std::isfinite(xmin)) { xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0; }
    if (spec.clamp_y_to_zero) ymin = std::min(ymin, 0.0);
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymax += ypad;
    if (!spec.clamp_y_to_zero) ymin -= ypad;

    const auto sx = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
    };
    const auto sy = [&](double y) {
        return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:g}\" height=\"{1:g}\" "
        "viewBox=\"0 0 {0:g} {1:g}\">\n",
        kWidth, kHeight);
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // gridlines + ticks
    const double xstep = nice_step(xmax - xmin);
    const double ystep = nice_step(ymax - ymin);
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (double v = std::ceil(xmin / xstep - 1e-9) * xstep; v <= xmax + 1e-9 * xstep;
         v += xstep) {
        const double px = sx(v);
        out << fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
            "stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n",
            px, kTop, kBottom);
        out << fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
            "stroke=\"#333333\" stroke-width=\"1\"/>\n",
            px, kBottom, kBottom + 5.0);
        out << fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px,
            kBottom + 18.0, tick_label(v));
    }
    for (double v = std::ceil(ymin / ystep - 1e-9) * ystep; v <= ymax + 1e-9 * ystep;
         v += ystep) {
        const double py = sy(v);
        out << fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\" "
            "stroke=\"#dddddd\" stroke-width=\"0.7\"/>\n",
            kLeft, kRight, py);
        out << fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\" "
            "stroke=\"#333333\" stroke-width=\"1\"/>\n",
            kLeft - 5.0, kLeft, py);
        out << fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 9.0,
            py + 3.5, tick_label(v));
    }
    out << "</g>\n";

    // frame
    out << fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
        "stroke=\"#333333\" stroke-width=\"1.2\"/>\n",
        kLeft, kTop, kRight - kLeft, kBottom - kTop);

    // curves
    for (std::size_t ci = 0; ci < spec.curves.size(); ++ci) {
        const auto& c = spec.curves[ci];
        std::string d;
        bool pen_down = false;
        std::size_t points = 0;
        double lastx = 0.0, lasty = 0.0;
        for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i) {
            if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) {
                pen_down = false;
                continue;
            }
            lastx = sx(c.x[i]);
            lasty = sy(c.y[i]);
            d += fmt::format("{}{:.2f},{:.2f} ", pen_down ? "L" : "M", lastx, lasty);
            pen_down = true;
            ++points;
        }
        if (points == 0) continue;
        if (points == 1) {
            out << fmt::format(
                "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", lastx, lasty,
                stroke_color(ci));
            continue;
        }
        const char* dash = stroke_dash(ci);
        out << fmt::format(
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{}/>\n", d,
            stroke_color(ci),
            *dash ? fmt::format(" stroke-dasharray=\"{}\"", dash) : std::string{});
    }

    // legend (top right, inside the frame)
    bool any_label = false;
    for (const auto& c : spec.curves)
        if (!c.label.empty()) any_label = true;
    if (any_label) {
        double ly = kTop + 16.0;
        for (std::size_t ci = 0; ci < spec.curves.size(); ++ci) {
            const auto& c = spec.curves[ci];
            if (c.label.empty()) continue;
            const double x_text = kRight - 12.0;
            const char* dash = stroke_dash(ci);
            out << fmt::format(
                "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
                "stroke-width=\"1.6\"{}/>\n",
                x_text - 96.0, ly - 4.0, x_text - 62.0, ly - 4.0, stroke_color(ci),
                *dash ? fmt::format(" stroke-dasharray=\"{}\"", dash) : std::string{});
            out << fmt::format(
                "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" "
                "text-anchor=\"end\" fill=\"#111111\">{}</text>\n",
                x_text, ly, xml_escape(c.label));
            ly += 17.0;
        }
    }

    // decorations
    out << fmt::format(
        "<text x=\"{:.2f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
        "text-anchor=\"middle\" fill=\"#111111\">{}</text>\n",
        0.5 * (kLeft + kRight), xml_escape(spec.title));
    out << fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"13\" "
        "text-anchor=\"middle\" fill=\"#111111\">{}</text>\n",
        0.5 * (kLeft + kRight), kHeight - 14.0, xml_escape(spec.x_label));
    out << fmt::format(
        "<text x=\"20\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"13\" "
        "text-anchor=\"middle\" fill=\"#111111\" transform=\"rotate(-90 20 {:.2f})\">{}</text>\n",
        0.5 * (kTop + kBottom), 0.5 * (kTop + kBottom), xml_escape(spec.y_label));
    out << "</svg>\n";
    if (!out) throw std::runtime_error(fmt::format("write failure on '{}'", path));
}

} // namespace dqsim
