#pragma once

#include <string>

#include "rentscope/csvio.hpp"

namespace rentscope::svg {

enum class ChartKind { Bar, Scatter, Line };

struct ChartSpec {
    ChartKind kind = ChartKind::Bar;
    std::string title;
    std::string x_label;
    std::string y_label;
    int x_column = 0;
    int y_column = 1;
    bool identity_line = false;  // scatter only: y = x reference line
    int width = 800;
    int height = 500;
};

// Deterministic SVG: fixed canvas, sorted categories, fixed-precision
// coordinates. Identical input tables give identical bytes.
std::string render_chart(const csv::Table& data, const ChartSpec& spec);

}  // namespace rentscope::svg
