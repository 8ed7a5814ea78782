#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecglab/signal.hpp"

namespace ecglab::svg {

// Plot plumbing only; nothing here carries a numeric contract.

struct PlotOptions {
    int width = 900;
    int height = 300;
    int margin = 40;
    std::string stroke = "#1565c0";
    std::string title;
};

inline void write_line_plot(std::span<const double> x, std::span<const double> y,
                            const std::filesystem::path& path, const PlotOptions& opt = {}) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("write_line_plot: mismatched or empty data");
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path.string());

    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    const double xmin = *xmin_it, xspan = std::max(*xmax_it - *xmin_it, 1e-30);
    const double ymin = *ymin_it, yspan = std::max(*ymax_it - *ymin_it, 1e-30);
    const double w = opt.width - 2.0 * opt.margin;
    const double h = opt.height - 2.0 * opt.margin;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\">\n";
    if (!opt.title.empty())
        os << "<text x=\"" << opt.width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << opt.title << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"" << opt.stroke << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double px = opt.margin + (x[i] - xmin) / xspan * w;
        const double py = opt.height - opt.margin - (y[i] - ymin) / yspan * h;
        os << px << ',' << py << ' ';
    }
    os << "\"/>\n</svg>\n";
}

inline void write_scatter_plot(std::span<const std::pair<double, double>> points,
                               const std::filesystem::path& path, const PlotOptions& opt = {}) {
    if (points.empty()) throw std::invalid_argument("write_scatter_plot: empty data");
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [a, b] : points) {
        x.push_back(a);
        y.push_back(b);
    }
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    const double xmin = *xmin_it, xspan = std::max(*xmax_it - *xmin_it, 1e-30);
    const double ymin = *ymin_it, yspan = std::max(*ymax_it - *ymin_it, 1e-30);
    const double w = opt.width - 2.0 * opt.margin;
    const double h = opt.height - 2.0 * opt.margin;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\">\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double px = opt.margin + (x[i] - xmin) / xspan * w;
        const double py = opt.height - opt.margin - (y[i] - ymin) / yspan * h;
        os << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"1.5\" fill=\"" << opt.stroke << "\"/>\n";
    }
    os << "</svg>\n";
}

inline void write_bar_plot(std::span<const double> edges, std::span<const std::size_t> counts,
                           const std::filesystem::path& path, const PlotOptions& opt = {}) {
    if (counts.empty() || edges.size() != counts.size() + 1)
        throw std::invalid_argument("write_bar_plot: bad histogram shape");
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    const double xmin = edges.front(), xspan = std::max(edges.back() - edges.front(), 1e-30);
    const double cmax = double(*std::max_element(counts.begin(), counts.end()));
    const double w = opt.width - 2.0 * opt.margin;
    const double h = opt.height - 2.0 * opt.margin;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\">\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double px = opt.margin + (edges[i] - xmin) / xspan * w;
        const double bw = (edges[i + 1] - edges[i]) / xspan * w;
        const double bh = cmax > 0 ? double(counts[i]) / cmax * h : 0.0;
        os << "<rect x=\"" << px << "\" y=\"" << opt.height - opt.margin - bh << "\" width=\"" << bw
           << "\" height=\"" << bh << "\" fill=\"" << opt.stroke << "\"/>\n";
    }
    os << "</svg>\n";
}

}  // namespace ecglab::svg
