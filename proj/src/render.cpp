#include "chacon/render.hpp"

#include <algorithm>
#include <sstream>

namespace chacon {

namespace {

std::string offsets_label(const DiagonalD& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.offsets.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d.offsets[i]);
    }
    return s + ")";
}

} // namespace

std::string render_figure1(const TowerGeometry& g, int step) {
    if (step < 0 || step > g.max_depth()) throw std::invalid_argument("step out of range");
    const double unit = 600.0;  // SVG units per length-1
    const double row = 14.0;
    std::int64_t h = g.height(step);
    double width = g.support_length(step).to_double() * unit + 20;
    double height = static_cast<double>(h) * row + 30;

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    svg << "<style>rect{stroke:#333;stroke-width:0.6}text{font:9px monospace}</style>\n";
    double level_w = unit;
    for (int i = 0; i < step; ++i) level_w /= 3.0;
    std::int64_t hp = step > 0 ? g.height(step - 1) : 0;
    for (std::int64_t l = 0; l < h; ++l) {
        double x = 10 + g.level_left(step, l).to_double() * unit;
        double y = height - 20 - row * static_cast<double>(l + 1);
        bool spacer = step > 0 && g.parent_level(step, l) < 0;
        bool in_c = l < g.half_height(step);
        const char* fill = spacer ? "#f2c94c" : (in_c ? "#9ecae1" : "#d9e6f2");
        svg << "<rect x='" << x << "' y='" << y << "' width='" << level_w << "' height='"
            << row - 2 << "' fill='" << fill << "'/>\n";
        if (h <= 60)
            svg << "<text x='" << x + 2 << "' y='" << y + row - 5 << "'>" << l << "</text>\n";
    }
    if (step > 0 && h <= 60) {
        svg << "<text x='10' y='" << height - 4 << "'>tower " << step << ": h=" << h
            << ", subcolumn copies of tower " << step - 1 << " at 0, " << hp << ", "
            << 2 * hp + 1 << "; spacers " << 2 * hp << " and " << 3 * hp + 1 << ".."
            << h - 1 << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_figure2(const TowerGeometry& g, const DiagonalD& diag) {
    if (diag.d() != 2) throw std::invalid_argument("figure 2 renders d = 2 only");
    const double cell = 120.0, pad = 40.0;
    std::ostringstream svg;
    double size = pad + 3 * cell + 10;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
        << "'>\n<style>rect{fill:none;stroke:#333}text{font:11px monospace}"
        << ".star{font:22px monospace}</style>\n";
    DiagonalD central = diagonal_refine(g, diag, Tau{1, 1});
    for (int a = 1; a <= 3; ++a) {
        svg << "<text x='" << pad + (a - 1) * cell + cell / 2 << "' y='" << pad - 8
            << "'>t2=" << a << "</text>\n";
        svg << "<text x='8' y='" << pad + (a - 1) * cell + cell / 2 << "'>t1=" << a
            << "</text>\n";
    }
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            double x = pad + (b - 1) * cell, y = pad + (a - 1) * cell;
            svg << "<rect x='" << x << "' y='" << y << "' width='" << cell << "' height='"
                << cell << "'/>\n";
            Tau tau{a, b};
            if (!is_tau_admissible(tau)) {
                svg << "<text class='star' x='" << x + cell / 2 - 6 << "' y='"
                    << y + cell / 2 + 6 << "'>*</text>\n";
                continue;
            }
            DiagonalD child = is_central(tau) ? central : diagonal_refine(g, diag, tau);
            std::string label = offsets_label(child);
            if (is_central(tau)) label += " central";
            svg << "<text x='" << x + 6 << "' y='" << y + cell / 2 << "'>" << label
                << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace chacon
