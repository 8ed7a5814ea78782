#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecglab/signal.hpp"

namespace ecglab {

struct WavFormat {
    std::uint32_t sample_rate_hz = 11025;
    std::uint16_t channels = 1;        // 1 or 2
    std::uint16_t bits_per_sample = 16;  // 8 or 16

    void validate() const {
        if (channels != 1 && channels != 2)
            throw std::invalid_argument("WavFormat: channels must be 1 or 2");
        if (bits_per_sample != 8 && bits_per_sample != 16)
            throw std::invalid_argument("WavFormat: bits_per_sample must be 8 or 16");
        if (sample_rate_hz == 0)
            throw std::invalid_argument("WavFormat: sample_rate_hz must be positive");
    }
};

// Stereo mic plug convention: tip = left = channel 1, ring = right = channel 2.
enum class ChannelSelect { Left, Right, Mono };

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
    os.write(b, 4);
}
inline void put_u16(std::ostream& os, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    os.write(b, 2);
}
inline std::uint32_t get_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}
inline std::uint16_t get_u16(const unsigned char* p) {
    return std::uint16_t(p[0] | (p[1] << 8));
}

}  // namespace detail

/// Writes `record` as RIFF/WAVE PCM. Stereo output duplicates the channel, so
/// either ChannelSelect round-trips. Out-of-range samples are clipped.
inline void write_wav(const EcgRecord& record, const std::filesystem::path& path, const WavFormat& format) {
    format.validate();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("write_wav: cannot open " + path.string());

    const std::uint16_t bytes_per_sample = format.bits_per_sample / 8;
    const std::uint32_t block_align = bytes_per_sample * format.channels;
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(record.samples.size()) * block_align;

    os.write("RIFF", 4);
    detail::put_u32(os, 36 + data_bytes);
    os.write("WAVE", 4);
    os.write("fmt ", 4);
    detail::put_u32(os, 16);
    detail::put_u16(os, 1);  // PCM
    detail::put_u16(os, format.channels);
    detail::put_u32(os, format.sample_rate_hz);
    detail::put_u32(os, format.sample_rate_hz * block_align);
    detail::put_u16(os, static_cast<std::uint16_t>(block_align));
    detail::put_u16(os, format.bits_per_sample);
    os.write("data", 4);
    detail::put_u32(os, data_bytes);

    for (double x : record.samples) {
        const double v = std::clamp(x, -1.0, 1.0);
        if (format.bits_per_sample == 16) {
            auto q = static_cast<std::int32_t>(std::lround(v * 32768.0));
            q = std::clamp(q, -32768, 32767);
            const auto s = static_cast<std::int16_t>(q);
            for (int c = 0; c < format.channels; ++c)
                detail::put_u16(os, static_cast<std::uint16_t>(s));
        } else {
            auto q = static_cast<std::int32_t>(std::lround(v * 128.0)) + 128;
            q = std::clamp(q, 0, 255);
            for (int c = 0; c < format.channels; ++c)
                os.put(static_cast<char>(q));
        }
    }
    if (!os) throw io_error("write_wav: write failed for " + path.string());
}

/// Reads a PCM RIFF/WAVE file, returning the selected channel scaled to [-1, 1]
/// (8-bit: (byte-128)/128, 16-bit: value/32768).
inline EcgRecord read_wav(const std::filesystem::path& path, ChannelSelect select) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("read_wav: cannot open " + path.string());
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 || std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
        throw io_error("read_wav: not a RIFF/WAVE file: " + path.string());

    WavFormat fmt;
    bool have_fmt = false;
    std::size_t data_off = 0, data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= buf.size()) {
        const char* id = reinterpret_cast<const char*>(buf.data() + pos);
        const std::uint32_t len = detail::get_u32(buf.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (std::memcmp(id, "fmt ", 4) == 0 && len >= 16 && body + 16 <= buf.size()) {
            const std::uint16_t audio_format = detail::get_u16(buf.data() + body);
            if (audio_format != 1)
                throw io_error("read_wav: only PCM encoding supported");
            fmt.channels = detail::get_u16(buf.data() + body + 2);
            fmt.sample_rate_hz = detail::get_u32(buf.data() + body + 4);
            fmt.bits_per_sample = detail::get_u16(buf.data() + body + 14);
            fmt.validate();
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data_off = body;
            data_len = std::min<std::size_t>(len, buf.size() - body);
        }
        pos = body + len + (len & 1);
    }
    if (!have_fmt || data_off == 0)
        throw io_error("read_wav: missing fmt or data chunk: " + path.string());

    if (select == ChannelSelect::Mono && fmt.channels != 1)
        throw std::invalid_argument("read_wav: Mono selection on a stereo file");
    if (select != ChannelSelect::Mono && fmt.channels != 2)
        throw std::invalid_argument("read_wav: Left/Right selection on a mono file");

    const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
    const std::size_t block = bytes_per_sample * fmt.channels;
    const std::size_t frames = data_len / block;
    const std::size_t chan = (select == ChannelSelect::Right) ? 1 : 0;

    std::vector<double> samples(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const unsigned char* p = buf.data() + data_off + i * block + chan * bytes_per_sample;
        if (fmt.bits_per_sample == 16) {
            const auto s = static_cast<std::int16_t>(detail::get_u16(p));
            samples[i] = s / 32768.0;
        } else {
            samples[i] = (int(p[0]) - 128) / 128.0;
        }
    }

    std::string which = select == ChannelSelect::Left ? "left" : select == ChannelSelect::Right ? "right" : "mono";
    return EcgRecord(std::move(samples), double(fmt.sample_rate_hz), path.filename().string() + ":" + which);
}

}  // namespace ecglab
