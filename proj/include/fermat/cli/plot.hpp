#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "fermat/representative.hpp"

namespace fermat {

enum class PlotFormat { csv, svg };

class IoError : public Error {
public:
    using Error::Error;
};

inline std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Header `p,t`, then one row per sample, both columns in %.17g.
inline void write_plot_csv(std::ostream& os, const std::vector<GraphPoint>& pts)
{
    os << "p,t\n";
    for (const auto& g : pts) os << format_g17(g.p) << ',' << format_g17(g.t) << '\n';
}

/// The curve as an SVG polyline: values of x on the horizontal axis, the
/// parameter t growing upwards.
inline void write_plot_svg(std::ostream& os, const std::vector<GraphPoint>& pts)
{
    const double w = 400, h = 300, pad = 20;
    double pmin = pts.front().p, pmax = pmin, tmax = 0;
    for (const auto& g : pts) {
        pmin = std::min(pmin, g.p);
        pmax = std::max(pmax, g.p);
        tmax = std::max(tmax, g.t);
    }
    if (pmax - pmin < 1e-12) {
        // a standard real: vertical tick in the middle
        pmin -= 1;
        pmax += 1;
    }
    if (tmax <= 0) tmax = 1;
    auto sx = [&](double p) { return pad + (p - pmin) / (pmax - pmin) * (w - 2 * pad); };
    auto sy = [&](double t) { return h - pad - t / tmax * (h - 2 * pad); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << format_g17(sx(pts[i].p)) << ',' << format_g17(sy(pts[i].t));
    }
    os << "\"/>\n</svg>\n";
}

inline void emit_plot(std::ostream& os, const FermatReal& x, const Rational& delta, std::size_t samples, PlotFormat format)
{
    auto pts = graph_points(x, delta, samples);
    if (format == PlotFormat::csv) {
        write_plot_csv(os, pts);
    } else {
        write_plot_svg(os, pts);
    }
}

inline void emit_plot(const std::string& path, const FermatReal& x, const Rational& delta, std::size_t samples, PlotFormat format)
{
    auto pts = graph_points(x, delta, samples);
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    if (format == PlotFormat::csv) {
        write_plot_csv(out, pts);
    } else {
        write_plot_svg(out, pts);
    }
    out.flush();
    if (!out) throw IoError("failed writing " + path);
}

} // namespace fermat
