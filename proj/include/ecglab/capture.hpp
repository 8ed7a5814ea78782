#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecglab/signal.hpp"
#include "ecglab/wav.hpp"

namespace ecglab {

struct capture_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Live-capture contract. A source is a single-owner stream of mono samples
/// at a fixed rate; hardware backends implement this, tests use file-backed
/// fakes. Exactly one reader per open stream.
class CaptureSource {
public:
    virtual ~CaptureSource() = default;
    virtual double sample_rate_hz() const = 0;
    virtual std::string name() const = 0;
    /// Reads up to `n` samples; fewer means the stream ended.
    virtual std::size_t read(std::vector<double>& out, std::size_t n) = 0;
};

/// File-backed capture source, used wherever a device would be.
class WavCaptureSource final : public CaptureSource {
public:
    explicit WavCaptureSource(const std::filesystem::path& path, ChannelSelect select = ChannelSelect::Mono)
        : record_(read_wav(path, select)) {}
    explicit WavCaptureSource(EcgRecord record) : record_(std::move(record)) {}

    double sample_rate_hz() const override { return record_.sample_rate_hz; }
    std::string name() const override { return record_.label; }

    std::size_t read(std::vector<double>& out, std::size_t n) override {
        const std::size_t avail = record_.samples.size() - pos_;
        const std::size_t take = std::min(n, avail);
        out.insert(out.end(), record_.samples.begin() + long(pos_), record_.samples.begin() + long(pos_ + take));
        pos_ += take;
        return take;
    }

private:
    EcgRecord record_;
    std::size_t pos_ = 0;
};

/// Thin adapter from a capture stream to an EcgRecord. Requested rate must
/// match the source; duration 0 yields an empty record.
inline EcgRecord capture_live(CaptureSource& source, double duration_s, double sample_rate_hz) {
    if (duration_s < 0) throw std::invalid_argument("capture_live: negative duration");
    if (!(sample_rate_hz > 0)) throw std::invalid_argument("capture_live: sample rate must be positive");
    if (std::abs(source.sample_rate_hz() - sample_rate_hz) > 1e-9)
        throw capture_error("capture_live: source does not support rate " + std::to_string(sample_rate_hz));

    const auto want = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    std::vector<double> samples;
    samples.reserve(want);
    while (samples.size() < want) {
        const std::size_t got = source.read(samples, want - samples.size());
        if (got == 0) throw capture_error("capture_live: stream ended after " + std::to_string(samples.size()) + " samples");
    }
    return EcgRecord(std::move(samples), sample_rate_hz, source.name());
}

}  // namespace ecglab
