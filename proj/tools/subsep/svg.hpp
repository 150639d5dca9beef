#pragma once

// Minimal self-contained SVG line plots for the emitted CSV series.

#include <Eigen/Core>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "subsep/errors.hpp"

namespace subsep::cli {

inline void write_svg_plot(const std::filesystem::path& path, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y, const std::string& title) {
    constexpr int width = 800, height = 420, pad = 48;
    const double xmin = x.minCoeff(), xmax = x.maxCoeff();
    double ymin = y.minCoeff(), ymax = y.maxCoeff();
    if (ymax == ymin) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double xspan = xmax == xmin ? 1.0 : xmax - xmin;

    auto px = [&](double v) { return pad + (v - xmin) / xspan * (width - 2 * pad); };
    auto py = [&](double v) { return height - pad - (v - ymin) / (ymax - ymin) * (height - 2 * pad); };

    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    char buf[128];
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << ' ' << height << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<rect x='" << pad << "' y='" << pad << "' width='" << width - 2 * pad << "' height='"
        << height - 2 * pad << "' fill='none' stroke='#999'/>\n"
        << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-family='sans-serif' "
        << "font-size='14'>" << title << "</text>\n";

    auto label = [&](double v, int xpix, int ypix, const char* anchor) {
        std::snprintf(buf, sizeof buf, "%.4g", v);
        out << "<text x='" << xpix << "' y='" << ypix << "' text-anchor='" << anchor
            << "' font-family='sans-serif' font-size='11' fill='#555'>" << buf << "</text>\n";
    };
    label(xmin, pad, height - pad + 16, "start");
    label(xmax, width - pad, height - pad + 16, "end");
    label(ymin, pad - 4, height - pad, "end");
    label(ymax, pad - 4, pad + 4, "end");

    out << "<polyline fill='none' stroke='#1f6fb4' stroke-width='1.2' points='";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(y[i]));
        out << buf;
    }
    out << "'/>\n</svg>\n";
}

}  // namespace subsep::cli
