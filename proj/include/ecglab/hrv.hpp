#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecglab/signal.hpp"
#include "ecglab/spectrum.hpp"

namespace ecglab {

struct RrSeries {
    std::vector<double> intervals_s;

    void validate() const {
        for (double v : intervals_s)
            if (!(v > 0) || !std::isfinite(v))
                throw std::invalid_argument("RrSeries: intervals must be positive and finite");
    }
};

struct HrvStatistics {
    double mean_rr_s = 0;
    double sdnn_s = 0;    // population std of intervals
    double rmssd_s = 0;   // RMS of successive differences
    double pnn50 = 0;     // fraction of successive differences > 50 ms
    double min_rr_s = 0;
    double max_rr_s = 0;
    double mean_hr_bpm = 0;
};

struct PoincareDescriptor {
    double sd1_s = 0;
    double sd2_s = 0;
    std::vector<std::pair<double, double>> points;  // (RR[n], RR[n+1])
};

struct RrHistogram {
    std::vector<double> bin_edges_s;  // ascending, counts.size() + 1
    std::vector<std::size_t> counts;
};

namespace hrv_detail {

inline double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

inline double population_std(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / double(v.size()));
}

}  // namespace hrv_detail

inline HrvStatistics hrv_statistics(const RrSeries& rr) {
    rr.validate();
    const auto& v = rr.intervals_s;
    if (v.size() < 2) throw degenerate_signal_error("hrv_statistics: need at least 2 intervals");

    HrvStatistics s;
    s.mean_rr_s = hrv_detail::mean(v);
    s.sdnn_s = hrv_detail::population_std(v);
    s.min_rr_s = *std::min_element(v.begin(), v.end());
    s.max_rr_s = *std::max_element(v.begin(), v.end());
    s.mean_hr_bpm = 60.0 / s.mean_rr_s;

    double sum_sq = 0.0;
    std::size_t over50 = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = v[i + 1] - v[i];
        sum_sq += d * d;
        if (std::abs(d) > 0.050) ++over50;
    }
    const auto m = double(v.size() - 1);
    s.rmssd_s = std::sqrt(sum_sq / m);
    s.pnn50 = double(over50) / m;
    return s;
}

/// Uniform half-open bins [edge, edge + width) starting at
/// floor(min/width) * width.
inline RrHistogram rr_histogram(const RrSeries& rr, double bin_width_s = 1.0 / 128.0) {
    rr.validate();
    if (rr.intervals_s.empty()) throw degenerate_signal_error("rr_histogram: empty series");
    if (!(bin_width_s > 0)) throw std::invalid_argument("rr_histogram: bin width must be positive");

    const double lo = *std::min_element(rr.intervals_s.begin(), rr.intervals_s.end());
    const double hi = *std::max_element(rr.intervals_s.begin(), rr.intervals_s.end());
    const double first_edge = std::floor(lo / bin_width_s) * bin_width_s;
    auto n_bins = static_cast<std::size_t>(std::floor((hi - first_edge) / bin_width_s)) + 1;

    RrHistogram h;
    h.counts.assign(n_bins, 0);
    h.bin_edges_s.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i) h.bin_edges_s[i] = first_edge + double(i) * bin_width_s;
    for (double v : rr.intervals_s) {
        auto idx = static_cast<std::size_t>(std::floor((v - first_edge) / bin_width_s));
        if (idx >= n_bins) idx = n_bins - 1;  // max value lands in the last bin
        ++h.counts[idx];
    }
    return h;
}

/// Poincare descriptors over points (RR[n], RR[n+1]).
/// sd1 is taken as rmssd/sqrt(2) (RMS of successive differences, no mean
/// removal); sd2 is the population std of the coordinate sums over sqrt(2).
/// With these conventions rmssd = sd1 * sqrt(2) holds exactly and
/// sd1^2 + sd2^2 equals twice the population variance of the pooled point
/// coordinates.
inline PoincareDescriptor poincare(const RrSeries& rr) {
    rr.validate();
    const auto& v = rr.intervals_s;
    if (v.size() < 3) throw degenerate_signal_error("poincare: need at least 3 intervals");

    PoincareDescriptor d;
    d.points.reserve(v.size() - 1);
    std::vector<double> sums(v.size() - 1);
    double diff_sq = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        d.points.emplace_back(v[i], v[i + 1]);
        sums[i] = v[i] + v[i + 1];
        const double diff = v[i + 1] - v[i];
        diff_sq += diff * diff;
    }
    d.sd1_s = std::sqrt(diff_sq / double(v.size() - 1)) / std::sqrt(2.0);
    d.sd2_s = hrv_detail::population_std(sums) / std::sqrt(2.0);
    return d;
}

struct RrSpectrumResult {
    AmplitudeSpectrum spectrum;
    double lf_power = 0;  // [0.04, 0.15) Hz
    double hf_power = 0;  // [0.15, 0.40] Hz
};

inline constexpr double kLfLowHz = 0.04;
inline constexpr double kLfHighHz = 0.15;
inline constexpr double kHfHighHz = 0.40;

/// Tachogram spectrum: RR values placed at their beat times, linearly
/// interpolated onto a uniform grid, mean-removed, then the single-sided
/// spectrum. Band powers are sums of squared amplitudes.
inline RrSpectrumResult rr_spectrum(const RrSeries& rr, double resample_hz = 4.0) {
    rr.validate();
    if (!(resample_hz > 0)) throw std::invalid_argument("rr_spectrum: resample rate must be positive");
    const auto& v = rr.intervals_s;
    if (v.size() < 4) throw degenerate_signal_error("rr_spectrum: need at least 4 intervals");

    // RR[i] sits at the time the interval ends.
    std::vector<double> t(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        t[i] = acc;
    }
    const double span = t.back() - t.front();
    if (span < 10.0) throw degenerate_signal_error("rr_spectrum: series spans less than 10 s");

    const auto n = static_cast<std::size_t>(std::floor(span * resample_hz)) + 1;
    std::vector<double> grid(n);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double tk = t.front() + double(k) / resample_hz;
        while (seg + 2 < t.size() && t[seg + 1] < tk) ++seg;
        const double w = (tk - t[seg]) / (t[seg + 1] - t[seg]);
        grid[k] = v[seg] + w * (v[seg + 1] - v[seg]);
    }
    const double m = hrv_detail::mean(grid);
    for (double& g : grid) g -= m;

    RrSpectrumResult res;
    res.spectrum = single_sided_spectrum(EcgRecord(std::move(grid), resample_hz, "tachogram"));
    for (std::size_t k = 0; k < res.spectrum.frequencies_hz.size(); ++k) {
        const double f = res.spectrum.frequencies_hz[k];
        const double p = res.spectrum.amplitude[k] * res.spectrum.amplitude[k];
        if (f >= kLfLowHz && f < kLfHighHz) res.lf_power += p;
        else if (f >= kLfHighHz && f <= kHfHighHz) res.hf_power += p;
    }
    return res;
}

}  // namespace ecglab
