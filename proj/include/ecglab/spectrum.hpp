#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ecglab/signal.hpp"

namespace ecglab {

/// Single-sided amplitude spectrum: a pure in-bin sinusoid shows up with its
/// time-domain amplitude (DC bin carries the plain mean).
struct AmplitudeSpectrum {
    std::vector<double> frequencies_hz;
    std::vector<double> amplitude;
};

namespace fft_detail {

using cd = std::complex<double>;

// Iterative radix-2 Cooley-Tukey; n must be a power of two.
inline void fft_pow2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / double(len) * (inverse ? 1.0 : -1.0);
        const cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& v : a) v /= double(n);
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Bluestein's chirp-z transform: DFT of arbitrary length via a power-of-two
// convolution.
inline std::vector<cd> dft(const std::vector<cd>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_pow2(a, false);
        return a;
    }
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cd> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // angle uses k^2 mod 2n to keep the argument small for large k
        const std::size_t k2 = (static_cast<std::size_t>(k) * k) % (2 * n);
        const double ang = std::numbers::pi * double(k2) / double(n);
        chirp[k] = cd(std::cos(ang), -std::sin(ang));
    }
    std::vector<cd> a(m, cd(0.0)), b(m, cd(0.0));
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

}  // namespace fft_detail

/// Full two-sided DFT of a real signal.
inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    std::vector<std::complex<double>> cx(x.begin(), x.end());
    return fft_detail::dft(cx);
}

inline std::vector<std::complex<double>> inverse_dft(const std::vector<std::complex<double>>& X) {
    std::vector<std::complex<double>> a(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) a[k] = std::conj(X[k]);
    a = fft_detail::dft(a);
    for (auto& v : a) v = std::conj(v) / double(X.size());
    return a;
}

/// amplitude[k] = 2|X[k]|/N for k >= 1, |X[0]|/N at DC; frequencies fs*k/N
/// for k = 0..ceil(N/2)-1.
inline AmplitudeSpectrum single_sided_spectrum(const EcgRecord& record) {
    const std::size_t n = record.samples.size();
    if (n < 2) throw degenerate_signal_error("single_sided_spectrum: need at least 2 samples");
    const auto X = dft(record.samples);
    const std::size_t half = (n + 1) / 2;

    AmplitudeSpectrum s;
    s.frequencies_hz.resize(half);
    s.amplitude.resize(half);
    for (std::size_t k = 0; k < half; ++k) {
        s.frequencies_hz[k] = record.sample_rate_hz * double(k) / double(n);
        const double scale = (k == 0) ? 1.0 : 2.0;
        s.amplitude[k] = scale * std::abs(X[k]) / double(n);
    }
    return s;
}

}  // namespace ecglab
