#include "annulus/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_decay_svg(const DecayProfile& profile, const std::string& title) {
    if (profile.empty()) throw PreconditionError("cannot plot an empty decay profile");

    std::size_t longest = 1;
    double top = 1.0;
    for (const auto& sv : profile.singular_values) {
        longest = std::max(longest, sv.size());
        for (double s : sv) top = std::max(top, s);
    }
    const double y_hi = std::ceil(std::log10(top));
    const double y_lo = std::log10(kPlotFloor);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const double x_span = std::max<double>(1.0, static_cast<double>(longest - 1));
    auto px = [&](double i) { return kLeft + plot_w * i / x_span; };
    auto py = [&](double s) {
        const double l = std::log10(std::max(s, kPlotFloor));
        return kTop + plot_h * (y_hi - l) / (y_hi - y_lo);
    };

    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!title.empty())
        svg << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
            << "</text>\n";

    // Axes and decade ticks.
    svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
        << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
        << kTop + plot_h << "\"/>\n</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int d = static_cast<int>(y_lo); d <= static_cast<int>(y_hi); d += 2) {
        const double y = py(std::pow(10.0, d));
        svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 3 << "\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double i = x_span * t / 4.0;
        svg << "<text x=\"" << px(i) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">"
            << static_cast<long>(std::lround(i)) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">index</text>\n"
        << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">singular value</text>\n</g>\n";

    svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(kPlotFloor) << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
        << py(kPlotFloor) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n"
        << "<text x=\"" << kLeft + plot_w - 4 << "\" y=\"" << py(kPlotFloor) - 4
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\" fill=\"gray\">floor</text>\n";

    const std::size_t ncolors = std::size(kColors);
    for (std::size_t s = 0; s < profile.sizes.size(); ++s) {
        const auto& sv = profile.singular_values[s];
        const char* color = kColors[s % ncolors];
        if (sv.size() == 1) {
            svg << "<circle cx=\"" << px(0) << "\" cy=\"" << py(sv[0]) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else if (!sv.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < sv.size(); ++i) svg << (i ? " " : "") << px(static_cast<double>(i)) << ',' << py(sv[i]);
            svg << "\"/>\n";
        }
        const double ly = kTop + 16.0 * static_cast<double>(s) + 8;
        svg << "<line x1=\"" << kWidth - kRight + 16 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kWidth - kRight + 46 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">size " << profile.sizes[s] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const DecayProfile& profile, const std::filesystem::path& path, const std::string& title) {
    const std::string text = render_decay_svg(profile, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace annulus
