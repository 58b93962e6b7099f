#pragma once

/**
 * @file plot.hpp
 * Plot data for the Nyquist and Popov figures, its CSV form, and static SVG output.
 *
 * CSV layout (one record per line):
 *     figure,<name>
 *     overlay,circle,<center>,<radius>
 *     overlay,vline,<x>,0
 *     overlay,line,<q>,<c>          # Re = c + q * (omega Im)
 *     marker,<x>                    # real-axis intercept
 *     omega,re,im | omega,re,omega_im
 *     <omega>,<x>,<y>
 *     ...
 * The SVG is a pure function of this data, so re-rendering a re-read CSV reproduces it.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rstab/criteria.hpp"
#include "rstab/errors.hpp"
#include "rstab/model_file.hpp"
#include "rstab/report.hpp"

namespace rstab {

enum class Figure { nyquist_smallgain, nyquist_circle, nyquist_posreal, popov };

inline constexpr Figure kAllFigures[] = {Figure::nyquist_smallgain, Figure::nyquist_circle, Figure::nyquist_posreal,
                                         Figure::popov};

[[nodiscard]] constexpr std::string_view figure_id(Figure f) {
    switch (f) {
    case Figure::nyquist_smallgain: return "nyquist_smallgain";
    case Figure::nyquist_circle: return "nyquist_circle";
    case Figure::nyquist_posreal: return "nyquist_posreal";
    case Figure::popov: return "popov";
    }
    return "";
}

[[nodiscard]] inline std::optional<Figure> parse_figure(std::string_view s) {
    for (Figure f : kAllFigures)
        if (figure_id(f) == s)
            return f;
    return std::nullopt;
}

[[nodiscard]] constexpr Criterion figure_criterion(Figure f) {
    switch (f) {
    case Figure::nyquist_smallgain: return Criterion::small_gain;
    case Figure::nyquist_circle: return Criterion::circle;
    case Figure::nyquist_posreal: return Criterion::positive_real;
    case Figure::popov: return Criterion::popov;
    }
    return Criterion::exact;
}

struct Overlay {
    enum class Kind { circle, vline, line };
    Kind kind = Kind::circle;
    double a = 0.0;  ///< circle centre | vline x | line q
    double b = 0.0;  ///< circle radius | unused | line intercept c
};

struct PlotData {
    Figure figure = Figure::nyquist_smallgain;
    std::vector<double> omega, x, y;
    std::vector<Overlay> overlays;
    std::vector<double> markers;

    [[nodiscard]] bool is_popov() const noexcept { return figure == Figure::popov; }
};

[[nodiscard]] inline PlotData make_plot(Figure fig, const LocusSummary& s, const StabilityInterval& iv) {
    if (iv.criterion != figure_criterion(fig))
        throw std::invalid_argument("make_plot: interval does not belong to figure " + std::string(figure_id(fig)));
    PlotData p;
    p.figure = fig;
    p.omega = s.locus.omega;
    p.x.reserve(s.locus.size());
    p.y.reserve(s.locus.size());
    for (std::size_t i = 0; i < s.locus.size(); ++i) {
        p.x.push_back(s.locus.value[i].real());
        p.y.push_back(fig == Figure::popov ? s.popov_ordinate[i] : s.locus.value[i].imag());
    }
    switch (fig) {
    case Figure::nyquist_smallgain: {
        const auto& w = std::get<SmallGainWitness>(iv.witness);
        p.overlays.push_back({Overlay::Kind::circle, 0.0, w.radius});
        break;
    }
    case Figure::nyquist_circle: {
        const auto& w = std::get<CircleWitness>(iv.witness);
        p.overlays.push_back({Overlay::Kind::circle, w.center, w.radius});
        break;
    }
    case Figure::nyquist_posreal: {
        const auto& w = std::get<PositiveRealWitness>(iv.witness);
        p.overlays.push_back({Overlay::Kind::vline, w.x_max, 0.0});
        p.overlays.push_back({Overlay::Kind::vline, w.x_min, 0.0});
        break;
    }
    case Figure::popov: {
        const auto& w = std::get<PopovWitness>(iv.witness);
        p.overlays.push_back({Overlay::Kind::line, w.q_plus, w.c_plus});
        p.overlays.push_back({Overlay::Kind::line, w.q_minus, w.c_minus});
        break;
    }
    }
    p.markers = {iv.positive_intercept, iv.negative_intercept};
    return p;
}

[[nodiscard]] inline std::string write_plot_csv(const PlotData& p) {
    std::ostringstream os;
    os << "figure," << figure_id(p.figure) << "\n";
    for (const auto& o : p.overlays) {
        const char* kind = o.kind == Overlay::Kind::circle ? "circle" : (o.kind == Overlay::Kind::vline ? "vline" : "line");
        os << "overlay," << kind << "," << format_double(o.a) << "," << format_double(o.b) << "\n";
    }
    for (double m : p.markers)
        os << "marker," << format_double(m) << "\n";
    os << (p.is_popov() ? "omega,re,omega_im\n" : "omega,re,im\n");
    for (std::size_t i = 0; i < p.omega.size(); ++i)
        os << format_double(p.omega[i]) << "," << format_double(p.x[i]) << "," << format_double(p.y[i]) << "\n";
    return os.str();
}

[[nodiscard]] inline PlotData parse_plot_csv(const std::string& text) {
    PlotData p;
    bool have_figure = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    const auto num = [&](const std::string& s, const char* field) {
        auto v = detail::parse_double(s);
        if (!v)
            throw ParseError(lineno, field, "line " + std::to_string(lineno) + ": bad number '" + s + "'");
        return *v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cols = detail::split(line, ',');
        if (cols[0] == "figure") {
            auto f = cols.size() > 1 ? parse_figure(cols[1]) : std::nullopt;
            if (!f)
                throw ParseError(lineno, "figure", "line " + std::to_string(lineno) + ": unknown figure");
            p.figure = *f;
            have_figure = true;
        } else if (cols[0] == "overlay") {
            if (cols.size() != 4)
                throw ParseError(lineno, "overlay", "line " + std::to_string(lineno) + ": overlay needs 3 fields");
            Overlay o;
            if (cols[1] == "circle")
                o.kind = Overlay::Kind::circle;
            else if (cols[1] == "vline")
                o.kind = Overlay::Kind::vline;
            else if (cols[1] == "line")
                o.kind = Overlay::Kind::line;
            else
                throw ParseError(lineno, "overlay", "line " + std::to_string(lineno) + ": unknown overlay kind");
            o.a = num(cols[2], "overlay");
            o.b = num(cols[3], "overlay");
            p.overlays.push_back(o);
        } else if (cols[0] == "marker") {
            if (cols.size() != 2)
                throw ParseError(lineno, "marker", "line " + std::to_string(lineno) + ": marker needs 1 field");
            p.markers.push_back(num(cols[1], "marker"));
        } else if (cols[0] == "omega") {
            continue;
        } else {
            if (cols.size() != 3)
                throw ParseError(lineno, "data", "line " + std::to_string(lineno) + ": expected omega,x,y");
            p.omega.push_back(num(cols[0], "omega"));
            p.x.push_back(num(cols[1], "x"));
            p.y.push_back(num(cols[2], "y"));
        }
    }
    if (!have_figure)
        throw ParseError(0, "figure", "plot CSV lacks a figure record");
    return p;
}

namespace detail {

inline double nice_step(double range) {
    if (!(range > 0.0))
        return 1.0;
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace detail

/// 800x600 static SVG. Nyquist figures use equal axis scaling and show the mirror
/// image for negative frequencies dashed.
[[nodiscard]] inline std::string render_svg(const PlotData& p) {
    constexpr double W = 800, Hgt = 600, L = 70, R = 20, T = 40, B = 50;
    const double pw = W - L - R, ph = Hgt - T - B;
    const bool nyquist = !p.is_popov();

    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    const auto include = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y))
            return;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        include(p.x[i], p.y[i]);
        if (nyquist)
            include(p.x[i], -p.y[i]);
    }
    for (const auto& o : p.overlays) {
        if (o.kind == Overlay::Kind::circle) {
            include(o.a - o.b, -o.b);
            include(o.a + o.b, o.b);
        } else if (o.kind == Overlay::Kind::vline) {
            include(o.a, 0.0);
        } else {
            include(o.b, 0.0);
        }
    }
    for (double m : p.markers)
        include(m, 0.0);
    if (x1 - x0 <= 0.0)
        x1 = x0 + 1.0;
    if (y1 - y0 <= 0.0)
        y1 = y0 + 1.0;
    const double padx = 0.06 * (x1 - x0), pady = 0.06 * (y1 - y0);
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;

    double sx = pw / (x1 - x0), sy = ph / (y1 - y0);
    if (nyquist) {
        const double s = std::min(sx, sy);
        const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        sx = sy = s;
        x0 = cx - 0.5 * pw / s;
        x1 = cx + 0.5 * pw / s;
        y0 = cy - 0.5 * ph / s;
        y1 = cy + 0.5 * ph / s;
    }
    const auto X = [&](double x) { return L + (x - x0) * sx; };
    const auto Y = [&](double y) { return T + (y1 - y) * sy; };
    const auto f2 = [](double v) { return detail::fmt("%.2f", v); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << f2(L) << "\" y=\"" << f2(T) << "\" width=\"" << f2(pw)
       << "\" height=\"" << f2(ph) << "\"/></clipPath></defs>\n";

    static constexpr const char* titles[] = {"Small gain: Nyquist plot of M", "Circle: Nyquist plot of M",
                                             "Positive real: Nyquist plot of M", "Popov plot of M"};
    os << "<text x=\"400\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
       << titles[static_cast<int>(p.figure)] << "</text>\n";

    // grid and tick labels
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    const double xs = detail::nice_step(x1 - x0), ys = detail::nice_step(y1 - y0);
    for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-12 * xs; t += xs) {
        const double v = std::abs(t) < 1e-9 * xs ? 0.0 : t;
        os << "<line x1=\"" << f2(X(v)) << "\" y1=\"" << f2(T) << "\" x2=\"" << f2(X(v)) << "\" y2=\"" << f2(T + ph)
           << "\" stroke=\"#eee\"/>";
        os << "<text x=\"" << f2(X(v)) << "\" y=\"" << f2(T + ph + 16) << "\" text-anchor=\"middle\">"
           << detail::fmt("%g", v) << "</text>\n";
    }
    for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-12 * ys; t += ys) {
        const double v = std::abs(t) < 1e-9 * ys ? 0.0 : t;
        os << "<line x1=\"" << f2(L) << "\" y1=\"" << f2(Y(v)) << "\" x2=\"" << f2(L + pw) << "\" y2=\"" << f2(Y(v))
           << "\" stroke=\"#eee\"/>";
        os << "<text x=\"" << f2(L - 6) << "\" y=\"" << f2(Y(v) + 4) << "\" text-anchor=\"end\">" << detail::fmt("%g", v)
           << "</text>\n";
    }
    os << "</g>\n";
    os << "<rect x=\"" << f2(L) << "\" y=\"" << f2(T) << "\" width=\"" << f2(pw) << "\" height=\"" << f2(ph)
       << "\" fill=\"none\" stroke=\"#333\"/>\n";
    os << "<text x=\"" << f2(L + pw / 2) << "\" y=\"" << f2(Hgt - 10)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">Re M(j&#969;)</text>\n";
    os << "<text x=\"16\" y=\"" << f2(T + ph / 2) << "\" font-family=\"sans-serif\" font-size=\"13\" "
       << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << f2(T + ph / 2) << ")\">"
       << (nyquist ? "Im M(j&#969;)" : "&#969; Im M(j&#969;)") << "</text>\n";

    os << "<g clip-path=\"url(#plot)\">\n";
    os << "<line x1=\"" << f2(L) << "\" y1=\"" << f2(Y(0)) << "\" x2=\"" << f2(L + pw) << "\" y2=\"" << f2(Y(0))
       << "\" stroke=\"#999\"/>\n";
    os << "<line x1=\"" << f2(X(0)) << "\" y1=\"" << f2(T) << "\" x2=\"" << f2(X(0)) << "\" y2=\"" << f2(T + ph)
       << "\" stroke=\"#999\"/>\n";

    const auto polyline = [&](double ysign, const char* extra) {
        os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\"" << extra << " points=\"";
        for (std::size_t i = 0; i < p.x.size(); ++i)
            os << (i ? " " : "") << f2(X(p.x[i])) << "," << f2(Y(ysign * p.y[i]));
        os << "\"/>\n";
    };
    if (nyquist)
        polyline(-1.0, " stroke-dasharray=\"4 3\" opacity=\"0.6\"");
    polyline(1.0, "");

    for (const auto& o : p.overlays) {
        switch (o.kind) {
        case Overlay::Kind::circle:
            os << "<circle cx=\"" << f2(X(o.a)) << "\" cy=\"" << f2(Y(0)) << "\" r=\"" << f2(o.b * sx)
               << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
            os << "<circle cx=\"" << f2(X(o.a)) << "\" cy=\"" << f2(Y(0)) << "\" r=\"2.5\" fill=\"#c0392b\"/>\n";
            break;
        case Overlay::Kind::vline:
            os << "<line x1=\"" << f2(X(o.a)) << "\" y1=\"" << f2(T) << "\" x2=\"" << f2(X(o.a)) << "\" y2=\""
               << f2(T + ph) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
            break;
        case Overlay::Kind::line:
            os << "<line x1=\"" << f2(X(o.b + o.a * y0)) << "\" y1=\"" << f2(Y(y0)) << "\" x2=\"" << f2(X(o.b + o.a * y1))
               << "\" y2=\"" << f2(Y(y1)) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
            break;
        }
    }
    for (double m : p.markers) {
        if (!std::isfinite(m))
            continue;
        os << "<circle cx=\"" << f2(X(m)) << "\" cy=\"" << f2(Y(0)) << "\" r=\"4\" fill=\"#27ae60\"/>\n";
    }
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#27ae60\">\n";
    for (double m : p.markers) {
        if (!std::isfinite(m) || m == 0.0)
            continue;
        os << "<text x=\"" << f2(std::clamp(X(m), L + 20, L + pw - 20)) << "\" y=\"" << f2(std::clamp(Y(0) - 8, T + 12, T + ph))
           << "\" text-anchor=\"middle\">" << detail::fmt("%.4g", m) << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace rstab
