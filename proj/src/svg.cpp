#include "returnlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "returnlab/errors.hpp"

namespace returnlab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 460.0;
constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Maps data coordinates into one panel of the canvas.
struct Scale {
    double x_lo, x_hi, y_lo, y_hi;        // data range
    double px_lo, px_hi, py_lo, py_hi;    // pixel range (py_lo is the TOP)

    double x(double v) const {
        return px_lo + (v - x_lo) / (x_hi - x_lo) * (px_hi - px_lo);
    }
    double y(double v) const {
        return py_hi - (v - y_lo) / (y_hi - y_lo) * (py_hi - py_lo);
    }
};

std::string svg_open(double h = kHeight) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(h) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(h) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(h)
        << "\" fill=\"white\"/>\n";
    return out.str();
}

void add_title(std::ostringstream& out, const std::string& title) {
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void add_axes(std::ostringstream& out, const Scale& s) {
    out << "<line class=\"axis\" x1=\"" << num(s.px_lo) << "\" y1=\"" << num(s.py_hi)
        << "\" x2=\"" << num(s.px_hi) << "\" y2=\"" << num(s.py_hi)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line class=\"axis\" x1=\"" << num(s.px_lo) << "\" y1=\"" << num(s.py_lo)
        << "\" x2=\"" << num(s.px_lo) << "\" y2=\"" << num(s.py_hi)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void add_marker(std::ostringstream& out, const Scale& s, double x, const char* color,
                const std::string& label) {
    const double px = s.x(x);
    out << "<line class=\"marker\" x1=\"" << num(px) << "\" y1=\"" << num(s.py_lo) << "\" x2=\""
        << num(px) << "\" y2=\"" << num(s.py_hi) << "\" stroke=\"" << color
        << "\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\"" << num(s.py_lo - 4)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label
        << "</text>\n";
}

void add_polyline(std::ostringstream& out, const std::vector<std::pair<double, double>>& pts,
                  const Scale& s, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << num(s.x(pts[i].first)) << ',' << num(s.y(pts[i].second));
    }
    out << "\"/>\n";
}

}  // namespace

std::string emit_svg_pmf(const Pmf& pmf, const PmfStats& stats, const std::string& title) {
    if (pmf.bin_count() == 0) throw UnsupportedKind("emit_svg_pmf: empty PMF");
    std::ostringstream out;
    out << svg_open();
    add_title(out, title);

    const double prob_max = *std::max_element(pmf.probs.begin(), pmf.probs.end());
    // Leave room for the band markers even when they sit outside the bins.
    const double x_lo = std::min(pmf.edges.front(), stats.band2.lo);
    const double x_hi = std::max(pmf.edges.back(), stats.band2.hi);
    Scale s{x_lo, x_hi, 0.0, prob_max > 0 ? prob_max * 1.1 : 1.0,
            kMarginLeft, kWidth - kMarginRight, kMarginTop, kHeight - kMarginBottom};
    add_axes(out, s);

    for (size_t i = 0; i < pmf.bin_count(); ++i) {
        const double x0 = s.x(pmf.edges[i]);
        const double x1 = s.x(pmf.edges[i + 1]);
        const double y = s.y(pmf.probs[i]);
        out << "<rect class=\"bin\" x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\""
            << num(std::max(x1 - x0 - 0.5, 0.5)) << "\" height=\"" << num(s.py_hi - y)
            << "\" fill=\"steelblue\"/>\n";
    }
    add_marker(out, s, stats.mode, "black", "mode " + label_num(stats.mode));
    add_marker(out, s, stats.band1.lo, "blue", label_num(stats.band1.lo));
    add_marker(out, s, stats.band1.hi, "blue", label_num(stats.band1.hi));
    add_marker(out, s, stats.band2.lo, "red", label_num(stats.band2.lo));
    add_marker(out, s, stats.band2.hi, "red", label_num(stats.band2.hi));

    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">value</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string emit_svg_horizons(const std::vector<HorizonSummary>& summaries,
                              const std::string& title) {
    if (summaries.empty()) throw UnsupportedKind("emit_svg_horizons: no summaries");
    std::ostringstream out;
    out << svg_open();
    add_title(out, title);

    double y_lo = 0.0, y_hi = 0.0;
    for (const auto& row : summaries) {
        y_lo = std::min(y_lo, row.min);
        y_hi = std::max(y_hi, row.max);
    }
    Scale s{-0.5, static_cast<double>(summaries.size()) - 0.5, y_lo * 1.05, y_hi * 1.05,
            kMarginLeft, kWidth - kMarginRight, kMarginTop, kHeight - kMarginBottom};
    add_axes(out, s);

    std::vector<std::pair<double, double>> mins, maxs, modes;
    for (size_t i = 0; i < summaries.size(); ++i) {
        const auto x = static_cast<double>(i);
        mins.emplace_back(x, summaries[i].min);
        maxs.emplace_back(x, summaries[i].max);
        modes.emplace_back(x, summaries[i].mode);
        out << "<text x=\"" << num(s.x(x)) << "\" y=\"" << num(s.py_hi + 14)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << summaries[i].spec.label << "</text>\n";
    }
    add_polyline(out, mins, s, "red");
    add_polyline(out, maxs, s, "green");
    add_polyline(out, modes, s, "black");

    // zero line for reading the trapping horizon off the min curve
    out << "<line class=\"marker\" x1=\"" << num(s.px_lo) << "\" y1=\"" << num(s.y(0.0))
        << "\" x2=\"" << num(s.px_hi) << "\" y2=\"" << num(s.y(0.0))
        << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"2,2\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string emit_svg_nmi(const std::vector<double>& curve, const std::string& title) {
    if (curve.empty()) throw UnsupportedKind("emit_svg_nmi: empty lag curve");
    std::ostringstream out;
    out << svg_open();
    add_title(out, title);
    Scale s{0.0, static_cast<double>(curve.size()), 0.0, 1.0,
            kMarginLeft, kWidth - kMarginRight, kMarginTop, kHeight - kMarginBottom};
    add_axes(out, s);
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < curve.size(); ++i) {
        pts.emplace_back(static_cast<double>(i + 1), curve[i]);
    }
    add_polyline(out, pts, s, "steelblue");
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">lag</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string emit_svg_profile(const ComplexityProfile& profile, const std::string& title) {
    if (profile.entries.empty()) throw UnsupportedKind("emit_svg_profile: empty profile");
    const double panel_h = 180.0;
    const double total_h = kMarginTop + 3 * panel_h + kMarginBottom;
    std::ostringstream out;
    out << svg_open(total_h);
    add_title(out, title);

    const char* names[3] = {"shannon", "hurst_h2", "largest_lyapunov"};
    const char* colors[3] = {"steelblue", "darkorange", "crimson"};
    for (int panel = 0; panel < 3; ++panel) {
        std::vector<std::pair<double, double>> pts;
        double y_lo = 0.0, y_hi = 1.0;
        for (size_t i = 0; i < profile.entries.size(); ++i) {
            const auto& e = profile.entries[i];
            std::optional<double> v;
            if (panel == 0) v = e.shannon_norm;
            if (panel == 1) v = e.hurst_h2;
            if (panel == 2) v = e.largest_lyapunov;
            if (v) {
                pts.emplace_back(static_cast<double>(i), *v);
                y_lo = std::min(y_lo, *v);
                y_hi = std::max(y_hi, *v);
            }
        }
        const double top = kMarginTop + panel * panel_h + 10.0;
        Scale s{-0.5, static_cast<double>(profile.entries.size()) - 0.5,
                y_lo - 0.05, y_hi + 0.05,
                kMarginLeft, kWidth - kMarginRight, top, top + panel_h - 30.0};
        add_axes(out, s);
        out << "<text x=\"" << num(kMarginLeft) << "\" y=\"" << num(top - 2)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << names[panel] << "</text>\n";
        if (!pts.empty()) add_polyline(out, pts, s, colors[panel]);
        if (panel == 2) {
            for (size_t i = 0; i < profile.entries.size(); ++i) {
                out << "<text x=\"" << num(s.x(static_cast<double>(i))) << "\" y=\""
                    << num(s.py_hi + 14)
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
                    << profile.entries[i].spec.label << "</text>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace returnlab
