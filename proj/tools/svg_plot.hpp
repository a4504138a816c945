// Minimal self-contained SVG writers for the --plot flag. Convenience output
// only; tests never read these files.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "sbsize/errors.hpp"

namespace sbsize::plot {

struct Frame {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;  // data ranges
    static constexpr int w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 45;

    double px(double x) const { return ml + (x - x0) / (x1 - x0 + 1e-300) * (w - ml - mr); }
    double py(double y) const { return h - mb - (y - y0) / (y1 - y0 + 1e-300) * (h - mt - mb); }
};

inline Frame fit_frame(const std::vector<double>& xs, const std::vector<double>& ys) {
    Frame f;
    f.x0 = *std::min_element(xs.begin(), xs.end());
    f.x1 = *std::max_element(xs.begin(), xs.end());
    f.y0 = std::min(0.0, *std::min_element(ys.begin(), ys.end()));
    f.y1 = *std::max_element(ys.begin(), ys.end());
    if (f.x1 == f.x0) f.x1 = f.x0 + 1;
    if (f.y1 == f.y0) f.y1 = f.y0 + 1;
    return f;
}

inline void write_chart(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& x_label,
                        const std::string& y_label, bool as_line) {
    if (xs.empty() || xs.size() != ys.size()) throw DataError("svg plot: bad series");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    const Frame f = fit_frame(xs, ys);
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::w << "\" height=\""
        << Frame::h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", Frame::ml,
                  Frame::h - Frame::mb, Frame::w - Frame::mr, Frame::h - Frame::mb);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n", Frame::ml,
                  Frame::mt, Frame::ml, Frame::h - Frame::mb);
    out << buf;
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%d\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
                      f.px(xv), Frame::h - Frame::mb + 16, xv);
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
                      Frame::ml - 6, f.py(yv) + 4, yv);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
                  (Frame::ml + Frame::w - Frame::mr) / 2, Frame::h - 8, x_label.c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"14\" y=\"%d\" font-size=\"12\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 14 %d)\">%s</text>\n",
                  (Frame::mt + Frame::h - Frame::mb) / 2, (Frame::mt + Frame::h - Frame::mb) / 2,
                  y_label.c_str());
    out << buf;

    if (as_line) {
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", f.px(xs[i]), f.py(ys[i]));
            out << buf;
        }
        out << "\"/>\n";
    } else {
        for (size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof(buf),
                          "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"2.2\" fill=\"#1f77b4\" "
                          "fill-opacity=\"0.6\"/>\n",
                          f.px(xs[i]), f.py(ys[i]));
            out << buf;
        }
    }
    out << "</svg>\n";
}

}  // namespace sbsize::plot
