#include "nlrd/svg.hpp"

#include "nlrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace nlrd {

namespace {

constexpr double kWidth = 840, kHeight = 560;
constexpr double kLeft = 70, kRight = 20, kTop = 50, kBottom = 55;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// A "nice" tick step close to range/6.
double tick_step(double range) {
    if (!(range > 0)) return 1.0;
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step = 10.0;
    if (frac <= 1.5)
        step = 1.0;
    else if (frac <= 3.5)
        step = 2.0;
    else if (frac <= 7.5)
        step = 5.0;
    return step * mag;
}

} // namespace

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel)
    : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

void SvgPlot::include_range(const std::vector<double>& xs, const std::vector<double>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        if (!has_data_) {
            xmin_ = xmax_ = xs[i];
            ymin_ = ymax_ = ys[i];
            has_data_ = true;
        } else {
            xmin_ = std::min(xmin_, xs[i]);
            xmax_ = std::max(xmax_, xs[i]);
            ymin_ = std::min(ymin_, ys[i]);
            ymax_ = std::max(ymax_, ys[i]);
        }
    }
}

void SvgPlot::polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, double width, bool dashed) {
    include_range(xs, ys);
    series_.push_back({Series::Type::Line, xs, ys, color, width, dashed});
}

void SvgPlot::scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::string& color, double radius) {
    include_range(xs, ys);
    series_.push_back({Series::Type::Scatter, xs, ys, color, radius, false});
}

void SvgPlot::vline(double x, const std::string& color, bool dashed) {
    series_.push_back({Series::Type::VLine, {x}, {}, color, 1.0, dashed});
}

void SvgPlot::note(const std::string& text) { notes_.push_back(text); }

void SvgPlot::write(const std::filesystem::path& path) const {
    double xmin = xmin_, xmax = xmax_, ymin = ymin_, ymax = ymax_;
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double xpad = 0.03 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot open for writing: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << title_ << "</text>\n";
    double note_y = 40;
    for (const auto& n : notes_) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"" << note_y
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#444\">"
            << n << "</text>\n";
        note_y += 14;
    }

    // Axes, ticks, grid.
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double xs_step = tick_step(xmax - xmin);
    for (double t = std::ceil(xmin / xs_step) * xs_step; t <= xmax + 1e-12 * xs_step;
         t += xs_step) {
        out << "<line x1=\"" << px(t) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(t)
            << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << px(t) << "\" y1=\"" << kTop << "\" x2=\"" << px(t)
            << "\" y2=\"" << kTop + ph << "\" stroke=\"#eee\"/>\n";
        out << "<text x=\"" << px(t) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(t) << "</text>\n";
    }
    const double ys_step = tick_step(ymax - ymin);
    for (double t = std::ceil(ymin / ys_step) * ys_step; t <= ymax + 1e-12 * ys_step;
         t += ys_step) {
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << kLeft
            << "\" y2=\"" << py(t) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << kLeft << "\" y1=\"" << py(t) << "\" x2=\"" << kLeft + pw
            << "\" y2=\"" << py(t) << "\" stroke=\"#eee\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(t) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(t) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xlabel_ << "</text>\n";
    out << "<text x=\"18\" y=\"" << kTop + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << kTop + ph / 2 << ")\">" << ylabel_ << "</text>\n";

    for (const auto& s : series_) {
        if (s.type == Series::Type::VLine) {
            out << "<line x1=\"" << px(s.xs[0]) << "\" y1=\"" << kTop << "\" x2=\""
                << px(s.xs[0]) << "\" y2=\"" << kTop + ph << "\" stroke=\"" << s.color
                << "\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
            continue;
        }
        if (s.type == Series::Type::Scatter) {
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.ys[i])) continue;
                out << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i])
                    << "\" r=\"" << s.width_or_radius << "\" fill=\"" << s.color
                    << "\"/>\n";
            }
            continue;
        }
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
            << s.width_or_radius << "\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.ys[i])) continue;
            out << num(px(s.xs[i])) << ',' << num(py(s.ys[i])) << ' ';
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace nlrd
