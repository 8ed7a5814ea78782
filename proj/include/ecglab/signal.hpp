#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecglab {

// Thrown by file-touching operations; the CLI maps this to its own exit code.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A signal too short or too empty for the requested analysis.
struct degenerate_signal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniformly sampled signal. The universal currency of the pipeline.
struct EcgRecord {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    std::string label;

    EcgRecord() = default;
    EcgRecord(std::vector<double> s, double fs, std::string lbl = {})
        : samples(std::move(s)), sample_rate_hz(fs), label(std::move(lbl)) {
        validate();
    }

    void validate() const {
        if (!(sample_rate_hz > 0.0))
            throw std::invalid_argument("EcgRecord: sample_rate_hz must be positive");
        for (double v : samples)
            if (!std::isfinite(v))
                throw std::invalid_argument("EcgRecord: non-finite sample");
    }

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
};

}  // namespace ecglab
