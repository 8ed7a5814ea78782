#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ecglab/signal.hpp"

namespace ecglab {

/// Normalized IIR transfer function H(z) = B(z)/A(z) with a[0] = 1.
struct IirCoefficients {
    std::vector<double> b;
    std::vector<double> a;

    void validate() const {
        if (b.empty() || a.empty()) throw std::invalid_argument("IirCoefficients: empty coefficient vector");
        if (std::abs(a[0] - 1.0) > 1e-12) throw std::invalid_argument("IirCoefficients: a[0] must be 1");
        for (double v : b)
            if (!std::isfinite(v)) throw std::invalid_argument("IirCoefficients: non-finite b coefficient");
        for (double v : a)
            if (!std::isfinite(v)) throw std::invalid_argument("IirCoefficients: non-finite a coefficient");
    }
};

struct FrequencyResponse {
    std::vector<double> frequencies_hz;
    std::vector<double> magnitude;
    std::vector<double> phase_rad;
};

struct NotchSpec {
    double w0 = 0.33;       // fraction of Nyquist
    double bandwidth = 0.1;  // -3 dB width, fraction of Nyquist

    void validate() const {
        if (!(w0 > 0 && w0 < 1)) throw std::invalid_argument("NotchSpec: w0 must be in (0,1)");
        if (!(bandwidth > 0 && bandwidth < 1)) throw std::invalid_argument("NotchSpec: bandwidth must be in (0,1)");
        if (!(w0 - bandwidth / 2 > 0 && w0 + bandwidth / 2 < 1))
            throw std::invalid_argument("NotchSpec: w0 +- bandwidth/2 must stay within (0,1)");
    }
};

enum class FilterKind { Lowpass = 0, Highpass = 1, Bandpass = 2 };

/// Classical-filter design request; frequencies are fractions of Nyquist.
struct ClassicalFilterSpec {
    FilterKind kind = FilterKind::Lowpass;
    double fpass1 = 0.2;
    double fpass2 = 0.0;
    double fstop1 = 0.3;
    double fstop2 = 0.1;
    double passband_ripple_db = 0.1;
    double stopband_atten_db = 60.0;

    void validate() const {
        auto in01 = [](double f) { return f > 0.0 && f < 1.0; };
        if (!(passband_ripple_db > 0)) throw std::invalid_argument("ClassicalFilterSpec: passband ripple must be positive");
        if (!(stopband_atten_db > 0)) throw std::invalid_argument("ClassicalFilterSpec: stopband attenuation must be positive");
        switch (kind) {
            case FilterKind::Lowpass:
                if (!in01(fpass1) || !in01(fstop1) || !(fpass1 < fstop1))
                    throw std::invalid_argument("ClassicalFilterSpec: lowpass needs 0 < fpass1 < fstop1 < 1");
                break;
            case FilterKind::Highpass:
                if (!in01(fpass1) || !in01(fstop1) || !(fstop1 < fpass1))
                    throw std::invalid_argument("ClassicalFilterSpec: highpass needs 0 < fstop1 < fpass1 < 1");
                break;
            case FilterKind::Bandpass:
                if (!in01(fpass1) || !in01(fpass2) || !in01(fstop1) || !in01(fstop2) ||
                    !(fstop2 < fpass1 && fpass1 <= fpass2 && fpass2 < fstop1))
                    throw std::invalid_argument("ClassicalFilterSpec: bandpass needs fstop2 < fpass1 <= fpass2 < fstop1 in (0,1)");
                break;
        }
    }
};

namespace filt_detail {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Polynomial with the given roots, leading coefficient 1, ascending powers of
// z^-1 when used for digital filters: prod (1 - r z^-1).
inline std::vector<cd> poly_from_roots(const std::vector<cd>& roots) {
    std::vector<cd> p{cd(1.0)};
    for (const cd& r : roots) {
        p.push_back(cd(0.0));
        for (std::size_t k = p.size() - 1; k >= 1; --k) p[k] -= r * p[k - 1];
    }
    return p;
}

inline std::vector<double> real_coeffs(const std::vector<cd>& p) {
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
    return out;
}

inline cd eval_poly(const std::vector<cd>& p, cd zinv) {
    cd acc(0.0), zk(1.0);
    for (const cd& c : p) {
        acc += c * zk;
        zk *= zinv;
    }
    return acc;
}

// Analog Butterworth prototype poles on the unit circle, left half plane.
inline std::vector<cd> butterworth_prototype(int order) {
    std::vector<cd> poles;
    poles.reserve(std::size_t(order));
    for (int k = 0; k < order; ++k) {
        const double theta = pi * (2.0 * k + order + 1.0) / (2.0 * order);
        poles.emplace_back(std::cos(theta), std::sin(theta));
    }
    return poles;
}

inline cd bilinear(cd s) { return (cd(1.0) + s) / (cd(1.0) - s); }

struct ZpkDigital {
    std::vector<cd> zeros;
    std::vector<cd> poles;
};

inline IirCoefficients to_ba_normalized(const ZpkDigital& zpk, cd norm_point) {
    const auto bp = poly_from_roots(zpk.zeros);
    const auto ap = poly_from_roots(zpk.poles);
    const cd zinv = cd(1.0) / norm_point;
    const double gain = std::abs(eval_poly(ap, zinv)) / std::abs(eval_poly(bp, zinv));

    IirCoefficients c;
    c.b = real_coeffs(bp);
    for (auto& v : c.b) v *= gain;
    c.a = real_coeffs(ap);
    const double a0 = c.a[0];
    for (auto& v : c.a) v /= a0;
    for (auto& v : c.b) v /= a0;
    c.a[0] = 1.0;  // absorb rounding
    return c;
}

}  // namespace filt_detail

/// Largest pole modulus of H(z) = B/A, found via companion-matrix eigenvalues.
inline double max_pole_modulus(const IirCoefficients& coeffs) {
    coeffs.validate();
    std::size_t deg = coeffs.a.size() - 1;
    while (deg > 0 && coeffs.a[deg] == 0.0) --deg;
    if (deg == 0) return 0.0;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(long(deg), long(deg));
    for (std::size_t i = 0; i < deg; ++i) companion(0, long(i)) = -coeffs.a[i + 1];
    for (std::size_t i = 1; i < deg; ++i) companion(long(i), long(i - 1)) = 1.0;

    const auto eigs = companion.eigenvalues();
    double worst = 0.0;
    for (long i = 0; i < eigs.size(); ++i) worst = std::max(worst, std::abs(eigs[i]));
    return worst;
}

inline bool is_stable(const IirCoefficients& coeffs) { return max_pole_modulus(coeffs) < 1.0; }

/// Digital Butterworth low-pass (bilinear transform, pre-warped cutoff).
/// wn is the cutoff as a fraction of Nyquist; |H| at the cutoff is 1/sqrt(2).
inline IirCoefficients design_butterworth_lowpass(int order, double wn) {
    using namespace filt_detail;
    if (order < 1) throw std::invalid_argument("design_butterworth_lowpass: order must be >= 1");
    if (!(wn > 0 && wn < 1)) throw std::invalid_argument("design_butterworth_lowpass: wn must be in (0,1)");

    const double warped = std::tan(pi * wn / 2.0);
    ZpkDigital zpk;
    for (const cd& p : butterworth_prototype(order)) zpk.poles.push_back(bilinear(warped * p));
    zpk.zeros.assign(std::size_t(order), cd(-1.0));
    return to_ba_normalized(zpk, cd(1.0));  // unity at DC
}

/// Digital Butterworth high-pass; unity gain at Nyquist, -3 dB at wn.
inline IirCoefficients design_butterworth_highpass(int order, double wn) {
    using namespace filt_detail;
    if (order < 1) throw std::invalid_argument("design_butterworth_highpass: order must be >= 1");
    if (!(wn > 0 && wn < 1)) throw std::invalid_argument("design_butterworth_highpass: wn must be in (0,1)");

    const double warped = std::tan(pi * wn / 2.0);
    ZpkDigital zpk;
    for (const cd& p : butterworth_prototype(order)) zpk.poles.push_back(bilinear(warped / p));
    zpk.zeros.assign(std::size_t(order), cd(1.0));
    return to_ba_normalized(zpk, cd(-1.0));  // unity at Nyquist
}

/// Second-order notch: an exact zero at w0, unity gain at DC and Nyquist,
/// and a -3 dB width equal to spec.bandwidth.
inline IirCoefficients design_iir_notch(const NotchSpec& spec) {
    spec.validate();
    const double w0 = std::numbers::pi * spec.w0;
    const double beta = std::tan(std::numbers::pi * spec.bandwidth / 2.0);
    const double gain = 1.0 / (1.0 + beta);
    const double c = std::cos(w0);

    IirCoefficients coeffs;
    coeffs.b = {gain, -2.0 * gain * c, gain};
    coeffs.a = {1.0, -2.0 * gain * c, 2.0 * gain - 1.0};
    return coeffs;
}

namespace filt_detail {

// Required attenuation ratio term of the Butterworth order formula.
inline double order_numerator(double passband_ripple_db, double stopband_atten_db) {
    return (std::pow(10.0, stopband_atten_db / 10.0) - 1.0) / (std::pow(10.0, passband_ripple_db / 10.0) - 1.0);
}

inline int butterworth_min_order(double selectivity, double ap_db, double as_db) {
    // selectivity = (stopband edge)/(passband edge) in the lowpass prototype, > 1
    const double n = std::log10(order_numerator(ap_db, as_db)) / (2.0 * std::log10(selectivity));
    int order = std::max(1, int(std::ceil(n - 1e-12)));
    return order;
}

}  // namespace filt_detail

/// Minimum-order Butterworth satisfying the spec's passband ripple and
/// stopband attenuation; the cutoff is placed so the passband edge is met
/// exactly. Orders above 20 are rejected as unrealistic.
inline IirCoefficients design_classical(const ClassicalFilterSpec& spec) {
    using namespace filt_detail;
    spec.validate();

    const double eps2 = std::pow(10.0, spec.passband_ripple_db / 10.0) - 1.0;

    if (spec.kind == FilterKind::Lowpass || spec.kind == FilterKind::Highpass) {
        const double wp = std::tan(pi * spec.fpass1 / 2.0);
        const double ws = std::tan(pi * spec.fstop1 / 2.0);
        const double selectivity = (spec.kind == FilterKind::Lowpass) ? ws / wp : wp / ws;
        const int order = butterworth_min_order(selectivity, spec.passband_ripple_db, spec.stopband_atten_db);
        if (order > 20) throw std::invalid_argument("design_classical: required order exceeds 20");

        // Scale the cutoff so attenuation at the passband edge is exactly Ap.
        const double scale = std::pow(eps2, -1.0 / (2.0 * order));
        const double wc_warped = (spec.kind == FilterKind::Lowpass) ? wp * scale : wp / scale;
        const double wn = 2.0 / pi * std::atan(wc_warped);
        return spec.kind == FilterKind::Lowpass ? design_butterworth_lowpass(order, wn)
                                                : design_butterworth_highpass(order, wn);
    }

    // Band-pass: lowpass prototype through s -> (s^2 + W0^2)/(B s).
    const double wp1 = std::tan(pi * spec.fpass1 / 2.0);
    const double wp2 = std::tan(pi * spec.fpass2 / 2.0);
    const double ws1 = std::tan(pi * spec.fstop2 / 2.0);  // lower stop edge
    const double ws2 = std::tan(pi * spec.fstop1 / 2.0);  // upper stop edge
    const double band = wp2 - wp1;
    const double w0sq = wp1 * wp2;
    auto prototype_freq = [&](double w) { return std::abs((w * w - w0sq) / (band * w)); };
    const double selectivity = std::min(prototype_freq(ws1), prototype_freq(ws2));
    if (!(selectivity > 1.0)) throw std::invalid_argument("design_classical: bandpass edges give no transition band");
    const int order = butterworth_min_order(selectivity, spec.passband_ripple_db, spec.stopband_atten_db);
    if (order > 20) throw std::invalid_argument("design_classical: required order exceeds 20");

    const double scale = std::pow(eps2, -1.0 / (2.0 * order));
    ZpkDigital zpk;
    for (const cd& p : butterworth_prototype(order)) {
        const cd bp = band * scale * p;  // prototype cutoff scaled to hit Ap at the passband edges
        const cd disc = std::sqrt(bp * bp * 0.25 - cd(w0sq));
        zpk.poles.push_back(bilinear(bp * 0.5 + disc));
        zpk.poles.push_back(bilinear(bp * 0.5 - disc));
    }
    zpk.zeros.assign(std::size_t(order), cd(1.0));
    zpk.zeros.insert(zpk.zeros.end(), std::size_t(order), cd(-1.0));

    const double w_center = 2.0 * std::atan(std::sqrt(w0sq));  // digital center, radians
    return to_ba_normalized(zpk, std::polar(1.0, w_center));
}

/// Causal direct-form filtering with zero initial state:
/// y[n] = sum b[k] x[n-k] - sum_{k>=1} a[k] y[n-k].
inline EcgRecord apply_filter(const IirCoefficients& coeffs, const EcgRecord& record) {
    coeffs.validate();
    if (!is_stable(coeffs)) throw std::invalid_argument("apply_filter: unstable coefficients");

    const auto& x = record.samples;
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs.b.size() && k <= n; ++k) acc += coeffs.b[k] * x[n - k];
        for (std::size_t k = 1; k < coeffs.a.size() && k <= n; ++k) acc -= coeffs.a[k] * y[n - k];
        y[n] = acc;
    }
    EcgRecord out = record;
    out.samples = std::move(y);
    return out;
}

/// H evaluated at n_points equally spaced frequencies on [0, fs/2].
inline FrequencyResponse frequency_response(const IirCoefficients& coeffs, std::size_t n_points, double fs) {
    using namespace filt_detail;
    coeffs.validate();
    if (n_points < 2) throw std::invalid_argument("frequency_response: need at least 2 points");
    if (!(fs > 0)) throw std::invalid_argument("frequency_response: fs must be positive");

    FrequencyResponse fr;
    fr.frequencies_hz.resize(n_points);
    fr.magnitude.resize(n_points);
    fr.phase_rad.resize(n_points);
    std::vector<cd> bc(coeffs.b.begin(), coeffs.b.end());
    std::vector<cd> ac(coeffs.a.begin(), coeffs.a.end());
    for (std::size_t i = 0; i < n_points; ++i) {
        const double w = pi * double(i) / double(n_points - 1);
        const cd zinv = std::polar(1.0, -w);
        const cd h = eval_poly(bc, zinv) / eval_poly(ac, zinv);
        fr.frequencies_hz[i] = fs / 2.0 * double(i) / double(n_points - 1);
        fr.magnitude[i] = std::abs(h);
        fr.phase_rad[i] = std::arg(h);
    }
    return fr;
}

/// Magnitude at a single normalized frequency (fraction of Nyquist).
inline double magnitude_at(const IirCoefficients& coeffs, double w_norm) {
    using namespace filt_detail;
    const cd zinv = std::polar(1.0, -pi * w_norm);
    std::vector<cd> bc(coeffs.b.begin(), coeffs.b.end());
    std::vector<cd> ac(coeffs.a.begin(), coeffs.a.end());
    return std::abs(eval_poly(bc, zinv) / eval_poly(ac, zinv));
}

/// Baseline wander split: the paper's butter(2, 0.002) low-pass estimates the
/// drift, which is subtracted out. Returns (corrected, baseline).
inline std::pair<EcgRecord, EcgRecord> remove_baseline(const EcgRecord& record) {
    if (record.empty()) throw degenerate_signal_error("remove_baseline: empty record");
    EcgRecord baseline = apply_filter(design_butterworth_lowpass(2, 0.002), record);
    EcgRecord corrected = record;
    for (std::size_t i = 0; i < corrected.samples.size(); ++i)
        corrected.samples[i] -= baseline.samples[i];
    return {std::move(corrected), std::move(baseline)};
}

/// Notch out mains hum; interference = input - refined, so the two halves
/// always add back to the input exactly.
inline std::pair<EcgRecord, EcgRecord> remove_powerline(const EcgRecord& record, double mains_hz, double bandwidth_hz) {
    const double nyquist = record.sample_rate_hz / 2.0;
    if (!(mains_hz > 0 && mains_hz < nyquist))
        throw std::invalid_argument("remove_powerline: mains frequency must be below Nyquist");
    NotchSpec spec{mains_hz / nyquist, bandwidth_hz / nyquist};
    EcgRecord refined = apply_filter(design_iir_notch(spec), record);
    EcgRecord interference = record;
    for (std::size_t i = 0; i < interference.samples.size(); ++i)
        interference.samples[i] -= refined.samples[i];
    return {std::move(refined), std::move(interference)};
}

}  // namespace ecglab
