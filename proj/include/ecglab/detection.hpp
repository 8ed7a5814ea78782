#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ecglab/signal.hpp"

namespace ecglab {

struct BeatAnnotations {
    std::vector<double> times_s;          // strictly ascending
    std::vector<double> peak_amplitudes;  // same length
};

struct QrsDetectorParams {
    double rough_highest_hr_bpm = 60.0;  // sets the refractory interval
    double initial_threshold = 0.5;
    double threshold_factor = 0.5;  // strictly inside (0,1)

    void validate() const {
        if (!(rough_highest_hr_bpm > 0))
            throw std::invalid_argument("QrsDetectorParams: rough_highest_hr_bpm must be positive");
        if (!(threshold_factor > 0.0 && threshold_factor < 1.0))
            throw std::invalid_argument("QrsDetectorParams: threshold factor must be greater than 0 and less than 1");
    }
};

/// Counts samples that are strictly greater than both neighbours and above
/// the threshold. Flat-topped peaks (equal neighbours) are not counted.
inline std::size_t count_beats_threshold(const EcgRecord& record, double threshold = 1.0) {
    const auto& x = record.samples;
    std::size_t count = 0;
    for (std::size_t k = 1; k + 1 < x.size(); ++k)
        if (x[k] > x[k - 1] && x[k] > x[k + 1] && x[k] > threshold) ++count;
    return count;
}

inline double compute_bpm(std::size_t beat_count, double duration_s) {
    if (!(duration_s > 0)) throw std::invalid_argument("compute_bpm: duration must be positive");
    return double(beat_count) / (duration_s / 60.0);
}

// Running mean of the most recent accepted peaks drives the threshold.
inline constexpr std::size_t kQrsThresholdWindow = 8;

/// Adaptive threshold QRS detector. Candidates are strict local maxima above
/// a running threshold; after each accepted beat the threshold becomes
/// threshold_factor times the mean of the last 8 accepted peak amplitudes.
/// Candidates inside the refractory interval 60/rough_highest_hr_bpm of the
/// previous beat are resolved by keeping the larger peak.
inline BeatAnnotations detect_qrs(const EcgRecord& record, const QrsDetectorParams& params) {
    params.validate();
    if (record.empty()) throw degenerate_signal_error("detect_qrs: empty record");

    const auto& x = record.samples;
    const double fs = record.sample_rate_hz;
    const double refractory_s = 60.0 / params.rough_highest_hr_bpm;

    BeatAnnotations out;
    std::deque<double> recent;
    double threshold = params.initial_threshold;

    auto update_threshold = [&] {
        const double mean = std::accumulate(recent.begin(), recent.end(), 0.0) / double(recent.size());
        threshold = params.threshold_factor * mean;
    };

    for (std::size_t k = 1; k + 1 < x.size(); ++k) {
        if (!(x[k] > x[k - 1] && x[k] > x[k + 1] && x[k] > threshold)) continue;
        const double t = double(k) / fs;
        if (!out.times_s.empty() && t - out.times_s.back() < refractory_s) {
            if (x[k] > out.peak_amplitudes.back()) {
                out.times_s.back() = t;
                out.peak_amplitudes.back() = x[k];
                recent.back() = x[k];
                update_threshold();
            }
            continue;
        }
        out.times_s.push_back(t);
        out.peak_amplitudes.push_back(x[k]);
        recent.push_back(x[k]);
        if (recent.size() > kQrsThresholdWindow) recent.pop_front();
        update_threshold();
    }
    return out;
}

/// RR intervals between consecutive annotated beats.
inline std::vector<double> rr_intervals(const BeatAnnotations& ann) {
    if (ann.times_s.size() < 2) throw degenerate_signal_error("rr_intervals: need at least 2 beats");
    std::vector<double> rr(ann.times_s.size() - 1);
    for (std::size_t i = 0; i + 1 < ann.times_s.size(); ++i) rr[i] = ann.times_s[i + 1] - ann.times_s[i];
    return rr;
}

}  // namespace ecglab
