#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecglab/signal.hpp"

namespace ecglab {

/// One morphology component: amplitude * exp(-(t - center)^2 / (2 width^2)).
struct GaussianWave {
    double amplitude = 0.0;
    double center_offset_s = 0.0;  // relative to the R peak
    double width_s = 0.01;
};

struct Sinusoid {
    double amplitude = 0.0;
    double frequency_hz = 0.0;
};

struct SynthConfig {
    double heart_rate_bpm = 60.0;
    double duration_s = 10.0;
    double sample_rate_hz = 500.0;
    // P, Q, R, S, T in that order; R must dominate.
    std::array<GaussianWave, 5> wave_set{{
        {0.15, -0.20, 0.025},   // P
        {-0.10, -0.03, 0.010},  // Q
        {1.00, 0.00, 0.012},    // R
        {-0.15, 0.035, 0.010},  // S
        {0.30, 0.25, 0.040},    // T
    }};
    Sinusoid baseline_wander{0.0, 0.2};
    Sinusoid mains{0.0, 50.0};
    double noise_sigma = 0.0;
    std::uint64_t rng_seed = 0;

    double r_amplitude() const { return wave_set[2].amplitude; }

    void validate() const {
        if (!(heart_rate_bpm > 0)) throw std::invalid_argument("SynthConfig: heart_rate_bpm must be positive");
        if (!(duration_s > 0)) throw std::invalid_argument("SynthConfig: duration_s must be positive");
        if (!(sample_rate_hz > 0)) throw std::invalid_argument("SynthConfig: sample_rate_hz must be positive");
        if (noise_sigma < 0) throw std::invalid_argument("SynthConfig: noise_sigma must be nonnegative");
        if (mains.amplitude != 0.0 && mains.frequency_hz != 50.0 && mains.frequency_hz != 60.0)
            throw std::invalid_argument("SynthConfig: mains frequency must be 50 or 60 Hz");
        const double r = wave_set[2].amplitude;
        for (std::size_t i = 0; i < wave_set.size(); ++i) {
            if (i == 2) continue;
            if (!(r > std::abs(wave_set[i].amplitude)))
                throw std::invalid_argument("SynthConfig: R amplitude must dominate every other wave");
            if (!(wave_set[i].width_s > 0)) throw std::invalid_argument("SynthConfig: wave width must be positive");
        }
        double footprint = 0.0;
        for (const auto& w : wave_set) footprint += 4.0 * w.width_s;
        if (!(60.0 / heart_rate_bpm > footprint))
            throw std::invalid_argument("SynthConfig: beat period shorter than wave footprints");
    }
};

struct GroundTruth {
    std::vector<double> beat_times_s;  // R peak times, ascending
    SynthConfig config;
};

/// Deterministic synthetic ECG: per-beat Gaussian bumps plus baseline
/// wander, mains sinusoid and white noise. Returns the record and the
/// R-peak times actually planted.
inline std::pair<EcgRecord, GroundTruth> synthesize_ecg(const SynthConfig& config) {
    config.validate();
    const double fs = config.sample_rate_hz;
    const double period_s = 60.0 / config.heart_rate_bpm;
    const auto n = static_cast<std::size_t>(std::llround(config.duration_s * fs));

    // First R peak at half a period in, nudged a quarter sample so a peak
    // never falls exactly between two samples (that would make a flat top
    // that strict-inequality peak pickers skip).
    const double first_r_s = 0.5 * period_s + 0.25 / fs;

    GroundTruth truth;
    truth.config = config;
    const double margin = 3.0 * config.wave_set[4].width_s;  // keep the T wave inside the record
    for (double t = first_r_s; t + margin < config.duration_s; t += period_s)
        truth.beat_times_s.push_back(t);

    std::vector<double> x(n, 0.0);
    for (double r_time : truth.beat_times_s) {
        for (const auto& w : config.wave_set) {
            const double c = r_time + w.center_offset_s;
            const auto lo = static_cast<long>(std::floor((c - 6.0 * w.width_s) * fs));
            const auto hi = static_cast<long>(std::ceil((c + 6.0 * w.width_s) * fs));
            for (long k = std::max(0L, lo); k <= hi && k < static_cast<long>(n); ++k) {
                const double dt = k / fs - c;
                x[static_cast<std::size_t>(k)] += w.amplitude * std::exp(-dt * dt / (2.0 * w.width_s * w.width_s));
            }
        }
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (config.baseline_wander.amplitude != 0.0)
        for (std::size_t k = 0; k < n; ++k)
            x[k] += config.baseline_wander.amplitude * std::sin(two_pi * config.baseline_wander.frequency_hz * k / fs);
    if (config.mains.amplitude != 0.0)
        for (std::size_t k = 0; k < n; ++k)
            x[k] += config.mains.amplitude * std::sin(two_pi * config.mains.frequency_hz * k / fs);
    if (config.noise_sigma > 0.0) {
        std::mt19937_64 rng(config.rng_seed);
        std::normal_distribution<double> noise(0.0, config.noise_sigma);
        for (std::size_t k = 0; k < n; ++k) x[k] += noise(rng);
    }

    return {EcgRecord(std::move(x), fs, "synth"), std::move(truth)};
}

}  // namespace ecglab
