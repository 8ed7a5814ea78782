#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ecglab/spectrum.hpp"
#include "ecglab/synth.hpp"

using namespace ecglab;

TEST_CASE("clean 60 bpm for 10 s plants exactly 10 R peaks 1 s apart") {
    SynthConfig cfg;
    cfg.heart_rate_bpm = 60;
    cfg.duration_s = 10;
    auto [record, truth] = synthesize_ecg(cfg);
    REQUIRE(truth.beat_times_s.size() == 10);
    for (std::size_t i = 0; i + 1 < truth.beat_times_s.size(); ++i)
        REQUIRE(truth.beat_times_s[i + 1] - truth.beat_times_s[i] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(record.samples.size() == 5000);
}

TEST_CASE("same seed gives identical records") {
    SynthConfig cfg;
    cfg.noise_sigma = 0.1;
    cfg.rng_seed = 42;
    auto [a, ta] = synthesize_ecg(cfg);
    auto [b, tb] = synthesize_ecg(cfg);
    REQUIRE(a.samples == b.samples);
    REQUIRE(ta.beat_times_s == tb.beat_times_s);
}

TEST_CASE("planted mains line shows up at its amplitude in the spectrum") {
    SynthConfig cfg;
    cfg.duration_s = 20;
    cfg.sample_rate_hz = 500;
    cfg.mains = {0.5, 50.0};
    auto [record, truth] = synthesize_ecg(cfg);
    auto spec = single_sided_spectrum(record);
    // 50 Hz is an exact bin for N = 10000, fs = 500
    std::size_t bin = 0;
    for (std::size_t k = 0; k < spec.frequencies_hz.size(); ++k)
        if (std::abs(spec.frequencies_hz[k] - 50.0) < 1e-9) bin = k;
    REQUIRE(bin > 0);
    REQUIRE(spec.amplitude[bin] == Catch::Approx(0.5).margin(0.02));
}

TEST_CASE("beat count tracks floor(duration * bpm / 60) within one") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> bpm_dist(30, 240);
    std::uniform_real_distribution<double> dur_dist(1, 600);
    for (int trial = 0; trial < 50; ++trial) {
        SynthConfig cfg;
        cfg.heart_rate_bpm = bpm_dist(rng);
        cfg.duration_s = dur_dist(rng);
        cfg.sample_rate_hz = 100;  // cheap; morphology does not matter here
        const double period = 60.0 / cfg.heart_rate_bpm;
        for (auto& w : cfg.wave_set) w.width_s *= period / 1.2;  // keep footprints inside the beat
        auto [record, truth] = synthesize_ecg(cfg);
        const auto expected = static_cast<long>(std::floor(cfg.duration_s * cfg.heart_rate_bpm / 60.0));
        const auto got = static_cast<long>(truth.beat_times_s.size());
        REQUIRE(std::abs(got - expected) <= 1);
    }
}

TEST_CASE("invalid configs are rejected") {
    SynthConfig cfg;
    cfg.heart_rate_bpm = 0;
    REQUIRE_THROWS_AS(synthesize_ecg(cfg), std::invalid_argument);

    SynthConfig dom;
    dom.wave_set[4].amplitude = 2.0;  // T above R
    REQUIRE_THROWS_AS(synthesize_ecg(dom), std::invalid_argument);

    SynthConfig fast;
    fast.heart_rate_bpm = 1000;  // beat period shorter than the waveform footprint
    REQUIRE_THROWS_AS(synthesize_ecg(fast), std::invalid_argument);

    SynthConfig mains;
    mains.mains = {0.1, 45.0};
    REQUIRE_THROWS_AS(synthesize_ecg(mains), std::invalid_argument);
}
