#pragma once

// File emitters shared by the CLI: CSV tables with '#' metadata preamble and
// self-contained SVG line plots. Both are deterministic byte-for-byte for
// identical inputs.

#include <string>
#include <vector>

namespace dqsim {

// Serializes with 12 significant digits (shortest form, round-trip friendly).
std::string format_real(double value);

// Identifier baked in at build time (git revision when available).
std::string build_id();

struct CsvTable {
    std::vector<std::string> metadata;        // emitted as "# ..." lines
    std::vector<std::string> columns;         // header row
    std::vector<std::vector<double>> rows;    // each row matches columns
};

void write_csv(const std::string& path, const CsvTable& table);

struct PlotCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotCurve> curves;
    bool clamp_y_to_zero = true; // include y=0 in the vertical range
};

void write_svg_plot(const std::string& path, const PlotSpec& spec);

} // namespace dqsim
