#include "pairsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "pairsim/errors.hpp"

namespace pairsim {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

bool usable(double x, double y, bool log_x)
{
    return std::isfinite(x) && std::isfinite(y) && (!log_x || x > 0.0);
}

std::vector<double> linear_ticks(double lo, double hi)
{
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

} // namespace

std::string render_svg(const Chart& chart)
{
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const auto& s : chart.series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.x[i], s.y[i], chart.log_x))
                continue;
            const double x = chart.log_x ? std::log10(s.x[i]) : s.x[i];
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax - xmin < 1e-12)
        xmax = xmin + 1.0;
    ymin = std::min(ymin, 0.0);
    if (ymax - ymin < 1e-12)
        ymax = ymin + 1.0;
    ymax += 0.05 * (ymax - ymin);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(chart.title) << "</text>\n";

    // axes and ticks
    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
       << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    std::vector<double> xt;
    if (chart.log_x) {
        for (double d = std::ceil(xmin - 1e-9); d <= xmax + 1e-9; d += 1.0)
            xt.push_back(d);
    } else {
        xt = linear_ticks(xmin, xmax);
    }
    for (double t : xt) {
        os << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(t))
           << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 18)
           << "\" text-anchor=\"middle\">" << tick_label(chart.log_x ? std::pow(10.0, t) : t)
           << "</text>\n";
    }
    for (double t : linear_ticks(ymin, ymax)) {
        os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft)
           << "\" y2=\"" << num(py(t)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4)
           << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
       << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
    os << "<text transform=\"translate(16," << num(kTop + ph / 2)
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";

    std::size_t idx = 0;
    for (const auto& s : chart.series) {
        const char* color = kColors[idx % std::size(kColors)];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.x[i], s.y[i], chart.log_x))
                continue;
            const double x = chart.log_x ? std::log10(s.x[i]) : s.x[i];
            pts << num(px(x)) << ',' << num(py(s.y[i])) << ' ';
        }
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
        if (s.dashed)
            os << " stroke-dasharray=\"6,4\"";
        os << " points=\"" << pts.str() << "\"/>\n";

        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(idx);
        const double lx = kLeft + pw + 12.0;
        os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
        if (s.dashed)
            os << " stroke-dasharray=\"6,4\"";
        os << "/>\n<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
           << "</text>\n";
        ++idx;
    }
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw Error("failed writing " + path);
}

} // namespace pairsim
