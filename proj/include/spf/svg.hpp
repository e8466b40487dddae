#pragma once
#include <algorithm>
#include <string>
#include <vector>

#include "spf/csv.hpp"

namespace spf {

// Minimal static SVG line plot: axes, corner labels, one polyline.
inline std::string svg_polyline_plot(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     const std::string& title)
{
    const int W = 800, H = 480, M = 60;
    double xmin = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
    double xmax = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
    double ymin = ys.empty() ? 0.0 : *std::min_element(ys.begin(), ys.end());
    double ymax = ys.empty() ? 1.0 : *std::max_element(ys.begin(), ys.end());
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" "
           "viewBox=\"0 0 800 480\">\n";
    svg += "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" + title +
           "</text>\n";
    auto line = [&](double x1, double y1, double x2, double y2) {
        svg += "<line x1=\"" + fmt_double(x1) + "\" y1=\"" + fmt_double(y1) + "\" x2=\"" +
               fmt_double(x2) + "\" y2=\"" + fmt_double(y2) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    };
    line(M, H - M, W - M, H - M); // x axis
    line(M, M, M, H - M);         // y axis
    auto label = [&](double px, double py, const std::string& text, const char* anchor) {
        svg += "<text x=\"" + fmt_double(px) + "\" y=\"" + fmt_double(py) +
               "\" text-anchor=\"" + anchor + "\" font-size=\"11\">" + text + "</text>\n";
    };
    label(M, H - M + 16, fmt_double(xmin), "middle");
    label(W - M, H - M + 16, fmt_double(xmax), "middle");
    label(M - 6, H - M + 4, fmt_double(ymin), "end");
    label(M - 6, M + 4, fmt_double(ymax), "end");

    svg += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        svg += fmt_double(sx(xs[i])) + "," + fmt_double(sy(ys[i]));
        if (i + 1 < xs.size()) svg += " ";
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

} // namespace spf
