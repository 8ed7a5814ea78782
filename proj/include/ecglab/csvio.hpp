#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ecglab/detection.hpp"
#include "ecglab/filters.hpp"
#include "ecglab/hrv.hpp"
#include "ecglab/signal.hpp"
#include "ecglab/spectrum.hpp"

namespace ecglab::csv {

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    return os;
}

}  // namespace detail

inline void write_record(const EcgRecord& record, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "t_seconds,amplitude\n";
    for (std::size_t i = 0; i < record.samples.size(); ++i)
        os << double(i) / record.sample_rate_hz << ',' << record.samples[i] << '\n';
}

/// Two rows: `b,<coeffs...>` and `a,<coeffs...>`.
inline void write_coefficients(const IirCoefficients& coeffs, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << 'b';
    for (double v : coeffs.b) os << ',' << v;
    os << "\na";
    for (double v : coeffs.a) os << ',' << v;
    os << '\n';
}

inline IirCoefficients read_coefficients(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path.string());
    IirCoefficients coeffs;
    std::string line;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string tag;
        if (!std::getline(ss, tag, ',')) continue;
        std::vector<double>* dst = tag == "b" ? &coeffs.b : tag == "a" ? &coeffs.a : nullptr;
        if (!dst) throw io_error("coefficient CSV rows must start with 'b' or 'a': " + path.string());
        std::string cell;
        while (std::getline(ss, cell, ',')) dst->push_back(std::stod(cell));
    }
    coeffs.validate();
    return coeffs;
}

inline void write_response(const FrequencyResponse& fr, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "frequency_hz,magnitude,phase_rad\n";
    for (std::size_t i = 0; i < fr.frequencies_hz.size(); ++i)
        os << fr.frequencies_hz[i] << ',' << fr.magnitude[i] << ',' << fr.phase_rad[i] << '\n';
}

inline void write_spectrum(const AmplitudeSpectrum& s, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "frequency_hz,magnitude\n";
    for (std::size_t i = 0; i < s.frequencies_hz.size(); ++i)
        os << s.frequencies_hz[i] << ',' << s.amplitude[i] << '\n';
}

inline void write_annotations(const BeatAnnotations& ann, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "time_s,amplitude\n";
    for (std::size_t i = 0; i < ann.times_s.size(); ++i)
        os << ann.times_s[i] << ',' << ann.peak_amplitudes[i] << '\n';
}

inline void write_beat_times(const std::vector<double>& times_s, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "beat_time_s\n";
    for (double t : times_s) os << t << '\n';
}

inline void write_poincare(const PoincareDescriptor& d, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "rr_n_s,rr_n1_s\n";
    for (const auto& [a, b] : d.points) os << a << ',' << b << '\n';
}

inline void write_histogram(const RrHistogram& h, const std::filesystem::path& path) {
    auto os = detail::open_out(path);
    os << "bin_low_s,bin_high_s,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        os << h.bin_edges_s[i] << ',' << h.bin_edges_s[i + 1] << ',' << h.counts[i] << '\n';
}

}  // namespace ecglab::csv
