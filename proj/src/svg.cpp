#include "heterour/svg.hpp"

#include "heterour/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace heterour {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_line_svg(const std::string& path, std::span<const double> ys,
                    const std::string& title) {
    if (ys.empty()) {
        throw InvalidInput("nothing to plot");
    }
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }

    const double width = 800.0;
    const double height = 400.0;
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    double lo = *std::min_element(ys.begin(), ys.end());
    double hi = *std::max_element(ys.begin(), ys.end());
    if (hi == lo) {
        hi = lo + 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const auto sx = [&](std::size_t i) {
        return ys.size() == 1
                   ? ml + pw / 2.0
                   : ml + pw * static_cast<double>(i) / static_cast<double>(ys.size() - 1);
    };
    const auto sy = [&](double v) { return mt + ph * (1.0 - (v - lo) / (hi - lo)); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
        << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' '
        << fmt(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
        << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * static_cast<double>(k) / 4.0;
        const double yy = sy(v);
        out << "<line x1=\"" << fmt(ml - 4) << "\" y1=\"" << fmt(yy) << "\" x2=\"" << fmt(ml)
            << "\" y2=\"" << fmt(yy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(yy + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
            << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const auto i = static_cast<std::size_t>(
            static_cast<double>(ys.size() - 1) * static_cast<double>(k) / 4.0);
        const double xx = sx(i);
        out << "<line x1=\"" << fmt(xx) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\"" << fmt(xx)
            << "\" y2=\"" << fmt(mt + ph + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(xx) << "\" y=\"" << fmt(mt + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << (i + 1) << "</text>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << fmt(sx(i)) << ',' << fmt(sy(ys[i]));
    }
    out << "\"/>\n</svg>\n";
}

}  // namespace heterour
