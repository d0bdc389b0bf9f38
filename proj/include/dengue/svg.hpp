#pragma once

// Static two-panel line chart of a trajectory: humans on the left,
// mosquitoes on the right, one polyline and legend entry per compartment.

#include <algorithm>
#include <array>
#include <cstddef>
#include <sstream>
#include <string>

#include "dengue/format.hpp"
#include "dengue/integrator.hpp"

namespace dengue {

namespace detail {

struct Series {
    const char* name;
    const char* color;
    std::size_t column;  // 0..7 over (S_h, E_h, I_h, R_h, A_m, S_m, E_m, I_m)
};

inline std::string xml_escape(const std::string& in)
{
    std::string out;
    for (char ch : in) {
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

inline double column_value(const State8& s, std::size_t col)
{
    if (col < 3) return s.reduced[col];
    if (col == 3) return s.R_h;
    return s.reduced[col - 1];
}

inline void svg_panel(std::ostringstream& os, const Trajectory& tr, const std::string& title,
                      const std::array<Series, 4>& series, double x0, double width, double height)
{
    constexpr double pad_l = 70, pad_r = 20, pad_t = 30, pad_b = 40;
    const double pw = width - pad_l - pad_r, ph = height - pad_t - pad_b;
    const double t_min = tr.times.front(), t_max = tr.times.back();
    double y_max = 0.0;
    for (const auto& st : tr.states)
        for (const auto& se : series) y_max = std::max(y_max, column_value(st, se.column));
    if (y_max <= 0.0) y_max = 1.0;
    const double t_span = t_max > t_min ? t_max - t_min : 1.0;

    auto px = [&](double t) { return x0 + pad_l + (t - t_min) / t_span * pw; };
    auto py = [&](double v) { return pad_t + ph - std::max(v, 0.0) / y_max * ph; };

    os << "<g>\n";
    os << "<text x=\"" << x0 + width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title
       << "</text>\n";
    os << "<rect x=\"" << x0 + pad_l << "\" y=\"" << pad_t << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = y_max * i / 4.0, t = t_min + t_span * i / 4.0;
        os << "<text x=\"" << x0 + pad_l - 6 << "\" y=\"" << py(v) + 4
           << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(v) << "</text>\n";
        os << "<text x=\"" << px(t) << "\" y=\"" << pad_t + ph + 16
           << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(t) << "</text>\n";
    }
    os << "<text x=\"" << x0 + pad_l + pw / 2 << "\" y=\"" << height - 6
       << "\" text-anchor=\"middle\" font-size=\"11\">days</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& se = series[k];
        os << "<polyline fill=\"none\" stroke=\"" << se.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < tr.times.size(); ++r) {
            if (r) os << ' ';
            os << px(tr.times[r]) << ',' << py(column_value(tr.states[r], se.column));
        }
        os << "\"/>\n";
        const double ly = pad_t + 14 + 16 * static_cast<double>(k);
        const double lx = x0 + pad_l + pw - 70;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 18 << "\" y2=\"" << ly - 4
           << "\" stroke=\"" << se.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 24 << "\" y=\"" << ly << "\" font-size=\"11\">" << se.name << "</text>\n";
    }
    os << "</g>\n";
}

}  // namespace detail

inline std::string trajectory_to_svg(const Trajectory& tr, const std::string& title = "")
{
    constexpr double panel_w = 480, panel_h = 360;
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * panel_w << "\" height=\"" << panel_h
       << "\" viewBox=\"0 0 " << 2 * panel_w << ' ' << panel_h << "\">\n";
    if (!title.empty()) os << "<title>" << detail::xml_escape(title) << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!tr.times.empty()) {
        detail::svg_panel(os, tr, "Human compartments",
                          {{{"S_h", "#1f77b4", 0}, {"E_h", "#ff7f0e", 1}, {"I_h", "#d62728", 2}, {"R_h", "#2ca02c", 3}}},
                          0, panel_w, panel_h);
        detail::svg_panel(os, tr, "Mosquito compartments",
                          {{{"A_m", "#8c564b", 4}, {"S_m", "#1f77b4", 5}, {"E_m", "#ff7f0e", 6}, {"I_m", "#d62728", 7}}},
                          panel_w, panel_w, panel_h);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace dengue
