#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "ecglab/filters.hpp"
#include "ecglab/spectrum.hpp"
#include "ecglab/synth.hpp"
#include "oracles.hpp"

using namespace ecglab;

namespace {

IirCoefficients random_stable_biquad(std::mt19937& rng) {
    std::uniform_real_distribution<double> radius(0.0, 0.95);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double r = radius(rng), th = angle(rng);
    IirCoefficients c;
    c.a = {1.0, -2.0 * r * std::cos(th), r * r};
    c.b = {coeff(rng), coeff(rng), coeff(rng)};
    return c;
}

}  // namespace

TEST_CASE("butter(2, 0.002): unity at DC, half power at the cutoff, monotone") {
    auto c = design_butterworth_lowpass(2, 0.002);
    REQUIRE(magnitude_at(c, 0.0) == Catch::Approx(1.0).margin(1e-6));
    REQUIRE(magnitude_at(c, 0.002) == Catch::Approx(std::sqrt(0.5)).margin(1e-6));
    REQUIRE(is_stable(c));

    auto fr = frequency_response(c, 4096, 2.0);
    for (std::size_t i = 0; i + 1 < fr.magnitude.size(); ++i)
        REQUIRE(fr.magnitude[i + 1] <= fr.magnitude[i] + 1e-12);
}

TEST_CASE("first order lowpass at 0.5 is monotone decreasing") {
    auto c = design_butterworth_lowpass(1, 0.5);
    auto fr = frequency_response(c, 1024, 2.0);
    for (std::size_t i = 0; i + 1 < fr.magnitude.size(); ++i)
        REQUIRE(fr.magnitude[i + 1] <= fr.magnitude[i] + 1e-12);
}

TEST_CASE("lowpass passes DC at unity in steady state") {
    auto c = design_butterworth_lowpass(2, 0.1);
    EcgRecord dc(std::vector<double>(10000, 3.0), 100.0);
    auto y = oracle::naive_filter(c.b, c.a, dc.samples);
    REQUIRE(y.back() == Catch::Approx(3.0).margin(1e-6));
    auto lib = apply_filter(c, dc);
    REQUIRE(lib.samples.back() == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("butterworth half-power property across orders and cutoffs") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> order(1, 8);
    std::uniform_real_distribution<double> cutoff(0.05, 0.95);
    for (int trial = 0; trial < 40; ++trial) {
        const double wn = cutoff(rng);
        auto c = design_butterworth_lowpass(order(rng), wn);
        const double mag = magnitude_at(c, wn);
        REQUIRE(mag * mag == Catch::Approx(0.5).margin(1e-9));
        REQUIRE(max_pole_modulus(c) < 1.0);
    }
}

TEST_CASE("highpass designs are stable with unity gain at Nyquist") {
    for (int order : {1, 2, 4}) {
        auto c = design_butterworth_highpass(order, 0.3);
        REQUIRE(magnitude_at(c, 1.0) == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(magnitude_at(c, 0.3) == Catch::Approx(std::sqrt(0.5)).margin(1e-9));
        REQUIRE(is_stable(c));
    }
}

TEST_CASE("notch at the paper's design point") {
    auto c = design_iir_notch({0.33, 0.1});
    REQUIRE(magnitude_at(c, 0.33) < 1e-12);
    REQUIRE(magnitude_at(c, 0.0) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(magnitude_at(c, 1.0) == Catch::Approx(1.0).margin(1e-9));
    // -3 dB shoulders near w0 +- bandwidth/2
    REQUIRE(magnitude_at(c, 0.28) == Catch::Approx(std::sqrt(0.5)).margin(0.02));
    REQUIRE(magnitude_at(c, 0.38) == Catch::Approx(std::sqrt(0.5)).margin(0.02));
}

TEST_CASE("notch at quarter sample rate has zeros at +-i") {
    auto c = design_iir_notch({0.5, 0.2});
    REQUIRE(c.b[1] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(magnitude_at(c, 0.5) < 1e-12);
}

TEST_CASE("notch depth property over random specs") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> center(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        const double w0 = center(rng);
        const double bw = std::min({0.3, 1.8 * w0, 1.8 * (1.0 - w0)}) * 0.5;
        auto c = design_iir_notch({w0, bw});
        REQUIRE(magnitude_at(c, w0) < 1e-10);
        REQUIRE(is_stable(c));
    }
}

TEST_CASE("classical lowpass with block defaults meets both band constraints") {
    auto c = design_classical({});
    const int order = int(c.a.size()) - 1;
    REQUIRE(order == oracle::brute_force_lowpass_order(0.2, 0.3, 0.1, 60.0));
    const double atten_stop = -20.0 * std::log10(magnitude_at(c, 0.3));
    REQUIRE(atten_stop >= 60.0 - 0.1);
    const double atten_pass = -20.0 * std::log10(magnitude_at(c, 0.2));
    REQUIRE(atten_pass <= 0.1 + 1e-3);
    REQUIRE(is_stable(c));
}

TEST_CASE("degenerate half-power spec needs only order 1") {
    ClassicalFilterSpec spec;
    spec.fpass1 = 0.2;
    spec.fstop1 = 0.9;
    spec.passband_ripple_db = 3.01;
    spec.stopband_atten_db = 3.01;
    auto c = design_classical(spec);
    REQUIRE(c.a.size() == 2);
}

TEST_CASE("classical order matches the brute-force oracle on random specs") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pass(0.05, 0.6);
    std::uniform_real_distribution<double> gap(1.3, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        ClassicalFilterSpec spec;
        spec.fpass1 = pass(rng);
        spec.fstop1 = std::min(0.97, spec.fpass1 * gap(rng));
        spec.passband_ripple_db = 0.5;
        spec.stopband_atten_db = 40.0;
        const int expected = oracle::brute_force_lowpass_order(spec.fpass1, spec.fstop1, 0.5, 40.0);
        if (expected < 0 || expected > 20) continue;
        auto c = design_classical(spec);
        REQUIRE(int(c.a.size()) - 1 == expected);
    }
}

TEST_CASE("classical highpass and bandpass meet their stopband targets") {
    ClassicalFilterSpec hp;
    hp.kind = FilterKind::Highpass;
    hp.fpass1 = 0.4;
    hp.fstop1 = 0.2;
    hp.passband_ripple_db = 1.0;
    hp.stopband_atten_db = 40.0;
    auto chp = design_classical(hp);
    REQUIRE(is_stable(chp));
    REQUIRE(-20.0 * std::log10(magnitude_at(chp, 0.2)) >= 40.0 - 0.1);
    REQUIRE(-20.0 * std::log10(magnitude_at(chp, 0.4)) <= 1.0 + 1e-3);

    ClassicalFilterSpec bp;
    bp.kind = FilterKind::Bandpass;
    bp.fstop2 = 0.1;
    bp.fpass1 = 0.2;
    bp.fpass2 = 0.4;
    bp.fstop1 = 0.6;
    bp.passband_ripple_db = 1.0;
    bp.stopband_atten_db = 30.0;
    auto cbp = design_classical(bp);
    REQUIRE(is_stable(cbp));
    REQUIRE(-20.0 * std::log10(magnitude_at(cbp, 0.1)) >= 30.0 - 0.1);
    REQUIRE(-20.0 * std::log10(magnitude_at(cbp, 0.6)) >= 30.0 - 0.1);
    REQUIRE(-20.0 * std::log10(magnitude_at(cbp, 0.2)) <= 1.0 + 1e-3);
    REQUIRE(-20.0 * std::log10(magnitude_at(cbp, 0.4)) <= 1.0 + 1e-3);
}

TEST_CASE("classical spec validation") {
    ClassicalFilterSpec bad;
    bad.fpass1 = 0.3;
    bad.fstop1 = 0.2;  // lowpass edges reversed
    REQUIRE_THROWS_AS(design_classical(bad), std::invalid_argument);

    ClassicalFilterSpec steep;
    steep.fpass1 = 0.2;
    steep.fstop1 = 0.205;
    steep.stopband_atten_db = 100.0;
    REQUIRE_THROWS_AS(design_classical(steep), std::invalid_argument);  // order above 20
}

TEST_CASE("apply_filter basics") {
    EcgRecord rec(std::vector<double>{1.0, -2.0, 3.0, 0.5}, 100.0);
    auto same = apply_filter({{1.0}, {1.0}}, rec);
    REQUIRE(same.samples == rec.samples);

    EcgRecord impulse(std::vector<double>{1, 0, 0, 0, 0}, 100.0);
    auto fir = apply_filter({{0.5, 0.5}, {1.0}}, impulse);
    REQUIRE(fir.samples == std::vector<double>{0.5, 0.5, 0.0, 0.0, 0.0});

    IirCoefficients unstable{{1.0}, {1.0, -2.0}};
    REQUIRE_THROWS_AS(apply_filter(unstable, rec), std::invalid_argument);
}

TEST_CASE("apply_filter matches the scalar recurrence oracle") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_stable_biquad(rng);
        std::vector<double> x(256);
        for (auto& v : x) v = amp(rng);
        auto lib = apply_filter(c, EcgRecord(x, 100.0));
        auto ref = oracle::naive_filter(c.b, c.a, x);
        for (std::size_t i = 0; i < x.size(); ++i)
            REQUIRE(std::abs(lib.samples[i] - ref[i]) < 1e-9);
    }
}

TEST_CASE("apply_filter is linear") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    auto c = random_stable_biquad(rng);
    std::vector<double> x(128), y(128);
    for (auto& v : x) v = amp(rng);
    for (auto& v : y) v = amp(rng);
    const double alpha = amp(rng), beta = amp(rng);
    std::vector<double> mix(128);
    for (std::size_t i = 0; i < 128; ++i) mix[i] = alpha * x[i] + beta * y[i];

    auto fx = apply_filter(c, EcgRecord(x, 100.0));
    auto fy = apply_filter(c, EcgRecord(y, 100.0));
    auto fmix = apply_filter(c, EcgRecord(mix, 100.0));
    for (std::size_t i = 0; i < 128; ++i)
        REQUIRE(std::abs(fmix.samples[i] - alpha * fx.samples[i] - beta * fy.samples[i]) < 1e-9);
}

TEST_CASE("frequency_response basics and DFT cross-check") {
    auto fr = frequency_response({{1.0}, {1.0}}, 16, 100.0);
    for (std::size_t i = 0; i < fr.magnitude.size(); ++i) {
        REQUIRE(fr.magnitude[i] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(fr.phase_rad[i] == Catch::Approx(0.0).margin(1e-12));
    }

    IirCoefficients ma{{0.5, 0.5}, {1.0}};
    REQUIRE(magnitude_at(ma, 1.0) < 1e-12);

    // H from the formula matches the DFT of the impulse response
    std::mt19937 rng(37);
    auto c = random_stable_biquad(rng);
    std::vector<double> impulse(4096, 0.0);
    impulse[0] = 1.0;
    auto h = oracle::naive_filter(c.b, c.a, impulse);
    auto H = dft(h);
    // bins 0..N/2 correspond to response at w = 2 pi k / N
    for (std::size_t k = 0; k <= 2048; k += 128) {
        const double w_norm = 2.0 * double(k) / 4096.0;
        REQUIRE(std::abs(std::abs(H[k]) - magnitude_at(c, w_norm)) < 1e-6);
    }
}

TEST_CASE("remove_baseline splits drift from signal") {
    EcgRecord zeros(std::vector<double>(100, 0.0), 500.0);
    auto [corr0, base0] = remove_baseline(zeros);
    for (double v : corr0.samples) REQUIRE(v == 0.0);
    for (double v : base0.samples) REQUIRE(v == 0.0);

    // pure 0.05 Hz drift at fs 500 sits far below the 0.002 cutoff
    const double fs = 500.0;
    const std::size_t n = std::size_t(90 * fs);
    std::vector<double> drift(n);
    for (std::size_t k = 0; k < n; ++k) drift[k] = std::sin(2.0 * std::numbers::pi * 0.05 * k / fs);
    auto [corr, base] = remove_baseline(EcgRecord(drift, fs));

    const auto skip = std::size_t(30 * fs);
    double in_rms = 0, out_rms = 0;
    for (std::size_t k = skip; k < n; ++k) {
        in_rms += drift[k] * drift[k];
        out_rms += corr.samples[k] * corr.samples[k];
    }
    REQUIRE(std::sqrt(out_rms) < 0.15 * std::sqrt(in_rms));
}

TEST_CASE("remove_powerline notches the hum and keeps the remainder") {
    const double fs = 500.0;
    SynthConfig cfg;
    cfg.duration_s = 30;
    cfg.sample_rate_hz = fs;
    auto [clean, truth] = synthesize_ecg(cfg);

    SECTION("no mains content means little interference") {
        auto [refined, interference] = remove_powerline(clean, 50.0, 2.0);
        double sig = 0, leak = 0;
        for (std::size_t k = 0; k < clean.samples.size(); ++k) {
            sig += clean.samples[k] * clean.samples[k];
            leak += interference.samples[k] * interference.samples[k];
        }
        REQUIRE(std::sqrt(leak) < 0.05 * std::sqrt(sig));
        // interference is defined as input minus refined, bit for bit
        for (std::size_t k = 0; k < clean.samples.size(); ++k)
            REQUIRE(interference.samples[k] == clean.samples[k] - refined.samples[k]);
    }

    SECTION("pure hum lands almost entirely in the interference output") {
        std::vector<double> hum(clean.samples.size());
        for (std::size_t k = 0; k < hum.size(); ++k)
            hum[k] = std::sin(2.0 * std::numbers::pi * 50.0 * k / fs);
        auto [refined, interference] = remove_powerline(EcgRecord(hum, fs), 50.0, 2.0);
        const auto skip = std::size_t(2 * fs);
        double dot = 0, nx = 0, ny = 0;
        for (std::size_t k = skip; k < hum.size(); ++k) {
            dot += hum[k] * interference.samples[k];
            nx += hum[k] * hum[k];
            ny += interference.samples[k] * interference.samples[k];
        }
        REQUIRE(dot / std::sqrt(nx * ny) >= 0.99);
    }

    SECTION("mains above Nyquist is rejected") {
        REQUIRE_THROWS_AS(remove_powerline(EcgRecord(std::vector<double>(10, 0.0), 80.0), 50.0, 2.0),
                          std::invalid_argument);
    }
}
