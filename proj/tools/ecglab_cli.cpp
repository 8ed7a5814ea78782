// ecglab command line front door: file-in, file-out pipelines over the
// library. Exit codes: 0 success, 2 argument/validation, 3 I/O,
// 4 empty/degenerate signal.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecglab/ecglab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

fs::path default_out_dir() {
    if (const char* env = std::getenv("ECGLAB_OUT_DIR")) return fs::path(env);
    return fs::current_path();
}

ecglab::ChannelSelect parse_channel(const std::string& name) {
    if (name == "left") return ecglab::ChannelSelect::Left;
    if (name == "right") return ecglab::ChannelSelect::Right;
    if (name == "mono") return ecglab::ChannelSelect::Mono;
    throw std::invalid_argument("channel must be left, right or mono");
}

json hrv_report_json(const ecglab::HrvStatistics& stats, const ecglab::PoincareDescriptor& poin,
                     const ecglab::RrSpectrumResult& spec) {
    return json{
        {"mean_rr_s", stats.mean_rr_s},
        {"sdnn_s", stats.sdnn_s},
        {"rmssd_s", stats.rmssd_s},
        {"pnn50", stats.pnn50},
        {"min_rr_s", stats.min_rr_s},
        {"max_rr_s", stats.max_rr_s},
        {"mean_hr_bpm", stats.mean_hr_bpm},
        {"sd1_s", poin.sd1_s},
        {"sd2_s", poin.sd2_s},
        {"lf_power", spec.lf_power},
        {"hf_power", spec.hf_power},
    };
}

struct SynthArgs {
    double bpm = 60, duration = 10, fs = 500, r_amplitude = 1.0;
    double noise_sigma = 0, wander_amp = 0, wander_freq = 0.2, mains_amp = 0, mains_freq = 50;
    std::uint64_t seed = 0;

    ecglab::SynthConfig to_config() const {
        ecglab::SynthConfig cfg;
        cfg.heart_rate_bpm = bpm;
        cfg.duration_s = duration;
        cfg.sample_rate_hz = fs;
        cfg.noise_sigma = noise_sigma;
        cfg.baseline_wander = {wander_amp, wander_freq};
        cfg.mains = {mains_amp, mains_freq};
        cfg.rng_seed = seed;
        const double scale = r_amplitude / cfg.wave_set[2].amplitude;
        for (auto& w : cfg.wave_set) w.amplitude *= scale;
        return cfg;
    }
};

void add_synth_flags(CLI::App* cmd, SynthArgs& a) {
    cmd->add_option("--bpm", a.bpm, "heart rate, beats per minute");
    cmd->add_option("--duration", a.duration, "record length, seconds");
    cmd->add_option("--fs", a.fs, "sample rate, Hz");
    cmd->add_option("--seed", a.seed, "RNG seed");
    cmd->add_option("--r-amplitude", a.r_amplitude, "R peak amplitude (other waves scale with it)");
    cmd->add_option("--noise-sigma", a.noise_sigma, "white noise standard deviation");
    cmd->add_option("--wander-amp", a.wander_amp, "baseline wander amplitude");
    cmd->add_option("--wander-freq", a.wander_freq, "baseline wander frequency, Hz");
    cmd->add_option("--mains-amp", a.mains_amp, "mains interference amplitude");
    cmd->add_option("--mains-freq", a.mains_freq, "mains frequency, 50 or 60 Hz");
}

int cmd_synth(const SynthArgs& args, const fs::path& out_dir, const std::string& name, int bits) {
    auto [record, truth] = ecglab::synthesize_ecg(args.to_config());
    fs::create_directories(out_dir);
    const fs::path wav_path = out_dir / (name + ".wav");
    const fs::path truth_path = out_dir / (name + "_truth.csv");

    // Scale into [-1,1] for the PCM container; detection-side tooling can
    // rescale with the reported factor.
    double peak = 1e-12;
    for (double v : record.samples) peak = std::max(peak, std::abs(v));
    const double scale = peak > 1.0 ? 1.0 / peak : 1.0;
    ecglab::EcgRecord scaled = record;
    if (scale != 1.0)
        for (auto& v : scaled.samples) v *= scale;

    ecglab::WavFormat fmt;
    fmt.sample_rate_hz = static_cast<std::uint32_t>(std::llround(args.fs));
    fmt.bits_per_sample = static_cast<std::uint16_t>(bits);
    ecglab::write_wav(scaled, wav_path, fmt);
    ecglab::csv::write_beat_times(truth.beat_times_s, truth_path);

    json out{
        {"wav", wav_path.string()},          {"truth_csv", truth_path.string()},
        {"samples", record.samples.size()},  {"sample_rate_hz", record.sample_rate_hz},
        {"beats", truth.beat_times_s.size()}, {"duration_s", args.duration},
        {"amplitude_scale", scale},          {"seed", args.seed},
    };
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_design(bool table1, bool as_json) {
    const auto report = ecglab::frontend::build_reference_design();
    const auto table = ecglab::frontend::verify_gain_table();

    if (as_json) {
        json items = json::array();
        for (const auto& it : report.items)
            items.push_back({{"name", it.name},
                             {"computed", it.computed},
                             {"target", it.target},
                             {"tolerance_rel", it.tolerance_rel},
                             {"pass", it.pass},
                             {"discrepant", it.discrepant},
                             {"note", it.note}});
        json out{{"items", items}, {"all_pass", report.all_pass()}};
        if (table1) {
            json rows = json::array();
            for (const auto& r : table)
                rows.push_back({{"rg_ohms", r.rg_ohms},
                                {"table_gain", r.table_gain},
                                {"computed_gain", r.computed_gain},
                                {"relative_error", r.relative_error},
                                {"pass", r.pass}});
            out["gain_table"] = rows;
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "analog front-end design checks\n";
        for (const auto& it : report.items) {
            std::cout << "  " << it.name << ": computed " << it.computed << " target " << it.target << "  "
                      << (it.pass ? "pass" : "FAIL");
            if (it.discrepant) std::cout << "  [paper-discrepant]";
            if (!it.note.empty()) std::cout << "  (" << it.note << ")";
            std::cout << '\n';
        }
        if (table1) {
            std::cout << "AD620 gain table\n";
            for (const auto& r : table)
                std::cout << "  Rg " << r.rg_ohms << " ohm: table " << r.table_gain << " computed "
                          << r.computed_gain << "  " << (r.pass ? "pass" : "FAIL") << '\n';
        }
    }
    bool ok = report.all_pass();
    for (const auto& r : table) ok = ok && r.pass;
    return ok ? kExitOk : 1;
}

struct DetectorArgs {
    std::string kind = "threshold";
    double threshold = 1.0;
    double initial_threshold = 0.5;
    double threshold_factor = 0.5;
    double max_hr = 60.0;
};

void add_detector_flags(CLI::App* cmd, DetectorArgs& d) {
    cmd->add_option("--detector", d.kind, "threshold or qrs")->check(CLI::IsMember({"threshold", "qrs"}));
    cmd->add_option("--threshold", d.threshold, "fixed amplitude threshold (threshold detector)");
    cmd->add_option("--initial-threshold", d.initial_threshold, "QRS detector initial threshold");
    cmd->add_option("--threshold-factor", d.threshold_factor, "QRS adaptive threshold factor, in (0,1)");
    cmd->add_option("--max-hr", d.max_hr, "rough highest heart rate, bpm (sets the refractory interval)");
}

ecglab::BeatAnnotations run_detector(const ecglab::EcgRecord& record, const DetectorArgs& d) {
    if (d.kind == "qrs") {
        ecglab::QrsDetectorParams params{d.max_hr, d.initial_threshold, d.threshold_factor};
        return ecglab::detect_qrs(record, params);
    }
    // Fixed-threshold counter, annotated so downstream HRV still works.
    ecglab::BeatAnnotations ann;
    const auto& x = record.samples;
    for (std::size_t k = 1; k + 1 < x.size(); ++k)
        if (x[k] > x[k - 1] && x[k] > x[k + 1] && x[k] > d.threshold) {
            ann.times_s.push_back(double(k) / record.sample_rate_hz);
            ann.peak_amplitudes.push_back(x[k]);
        }
    return ann;
}

int cmd_pipeline(const fs::path& input, const std::string& channel, double mains_hz, double notch_bw_hz,
                 bool baseline_removal, const DetectorArgs& det, const fs::path& out_dir, bool emit_csv,
                 bool emit_svg) {
    ecglab::EcgRecord record = ecglab::read_wav(input, parse_channel(channel));
    if (record.empty()) throw ecglab::degenerate_signal_error("pipeline: input record is empty");
    fs::create_directories(out_dir);

    ecglab::EcgRecord stage = record;
    if (baseline_removal) {
        auto [corrected, baseline] = ecglab::remove_baseline(stage);
        if (emit_csv) {
            ecglab::csv::write_record(corrected, out_dir / "baseline_corrected.csv");
            ecglab::csv::write_record(baseline, out_dir / "baseline_estimate.csv");
        }
        stage = std::move(corrected);
    }
    auto [refined, interference] = ecglab::remove_powerline(stage, mains_hz, notch_bw_hz);
    if (emit_csv) {
        ecglab::csv::write_record(refined, out_dir / "refined.csv");
        ecglab::csv::write_record(interference, out_dir / "interference.csv");
    }

    const auto ann = run_detector(refined, det);
    if (emit_csv) ecglab::csv::write_annotations(ann, out_dir / "beats.csv");
    if (ann.times_s.size() < 5)
        throw ecglab::degenerate_signal_error("pipeline: fewer than 5 beats detected; cannot analyze");

    const double duration = refined.duration_s();
    const double bpm = ecglab::compute_bpm(ann.times_s.size(), duration);

    ecglab::RrSeries rr{ecglab::rr_intervals(ann)};
    const auto stats = ecglab::hrv_statistics(rr);
    const auto poin = ecglab::poincare(rr);
    const auto spec = ecglab::rr_spectrum(rr);
    if (emit_csv) {
        ecglab::csv::write_poincare(poin, out_dir / "poincare.csv");
        ecglab::csv::write_histogram(ecglab::rr_histogram(rr), out_dir / "rr_histogram.csv");
    }
    if (emit_svg) {
        std::vector<double> t(refined.samples.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = double(i) / refined.sample_rate_hz;
        ecglab::svg::write_line_plot(t, refined.samples, out_dir / "refined.svg", {.title = "refined signal"});
        ecglab::svg::write_scatter_plot(poin.points, out_dir / "poincare.svg", {.title = "Poincare plot"});
    }

    json report{
        {"input", input.string()},
        {"beat_count", ann.times_s.size()},
        {"duration_s", duration},
        {"bpm", bpm},
        {"hrv", hrv_report_json(stats, poin, spec)},
        {"params",
         {{"channel", channel},
          {"mains_hz", mains_hz},
          {"notch_bandwidth_hz", notch_bw_hz},
          {"baseline_removal", baseline_removal},
          {"detector", det.kind}}},
    };
    const fs::path report_path = out_dir / "report.json";
    std::ofstream rf(report_path);
    rf << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

int cmd_detect(const fs::path& input, const std::string& channel, const DetectorArgs& det, const fs::path& out_dir,
               bool emit_csv) {
    ecglab::EcgRecord record = ecglab::read_wav(input, parse_channel(channel));
    if (record.empty()) throw ecglab::degenerate_signal_error("detect: input record is empty");
    const auto ann = run_detector(record, det);
    if (emit_csv) {
        fs::create_directories(out_dir);
        ecglab::csv::write_annotations(ann, out_dir / "beats.csv");
    }
    const double duration = record.duration_s();
    json out{
        {"beat_count", ann.times_s.size()},
        {"duration_s", duration},
        {"bpm", ecglab::compute_bpm(ann.times_s.size(), duration)},
        {"params", {{"detector", det.kind}, {"threshold", det.threshold}, {"threshold_factor", det.threshold_factor},
                    {"initial_threshold", det.initial_threshold}, {"max_hr", det.max_hr}}},
    };
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

std::vector<double> read_rr_file(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ecglab::io_error("cannot open: " + path.string());
    std::vector<double> rr;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first && line.find_first_not_of("0123456789.,-eE+ \t") != std::string::npos) {
            first = false;
            continue;  // header row
        }
        first = false;
        rr.push_back(std::stod(line));
    }
    return rr;
}

int cmd_hrv(const fs::path& rr_path, double bin_width, double resample_hz, const fs::path& out_dir, bool emit_csv,
            bool emit_svg) {
    ecglab::RrSeries rr{read_rr_file(rr_path)};
    const auto stats = ecglab::hrv_statistics(rr);
    const auto poin = ecglab::poincare(rr);
    const auto hist = ecglab::rr_histogram(rr, bin_width);
    const auto spec = ecglab::rr_spectrum(rr, resample_hz);

    if (emit_csv || emit_svg) fs::create_directories(out_dir);
    if (emit_csv) {
        ecglab::csv::write_poincare(poin, out_dir / "poincare.csv");
        ecglab::csv::write_histogram(hist, out_dir / "rr_histogram.csv");
        ecglab::csv::write_spectrum(spec.spectrum, out_dir / "rr_spectrum.csv");
    }
    if (emit_svg) {
        ecglab::svg::write_scatter_plot(poin.points, out_dir / "poincare.svg", {.title = "Poincare plot"});
        ecglab::svg::write_bar_plot(hist.bin_edges_s, hist.counts, out_dir / "rr_histogram.svg",
                                    {.title = "RR histogram"});
        ecglab::svg::write_line_plot(spec.spectrum.frequencies_hz, spec.spectrum.amplitude,
                                     out_dir / "rr_spectrum.svg", {.title = "RR spectrum"});
    }
    std::cout << hrv_report_json(stats, poin, spec).dump(2) << '\n';
    return kExitOk;
}

struct FilterArgs {
    std::string design = "butterworth-lowpass";
    int order = 2;
    double wn = 0.002;
    double notch_w0 = 0.33, notch_bw = 0.1;
    std::string classical_kind = "lowpass";
    double fpass1 = 0.2, fpass2 = 0.0, fstop1 = 0.3, fstop2 = 0.1, ripple = 0.1, atten = 60.0;
};

ecglab::IirCoefficients design_from_args(const FilterArgs& f) {
    if (f.design == "butterworth-lowpass") return ecglab::design_butterworth_lowpass(f.order, f.wn);
    if (f.design == "butterworth-highpass") return ecglab::design_butterworth_highpass(f.order, f.wn);
    if (f.design == "notch") return ecglab::design_iir_notch({f.notch_w0, f.notch_bw});
    ecglab::ClassicalFilterSpec spec;
    spec.kind = f.classical_kind == "highpass" ? ecglab::FilterKind::Highpass
              : f.classical_kind == "bandpass" ? ecglab::FilterKind::Bandpass
                                               : ecglab::FilterKind::Lowpass;
    spec.fpass1 = f.fpass1;
    spec.fpass2 = f.fpass2;
    spec.fstop1 = f.fstop1;
    spec.fstop2 = f.fstop2;
    spec.passband_ripple_db = f.ripple;
    spec.stopband_atten_db = f.atten;
    return ecglab::design_classical(spec);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ECG-over-soundcard processing toolbox"};
    app.require_subcommand(1);

    fs::path out_dir = default_out_dir();
    app.add_option("--out-dir", out_dir, "output directory (default: ECGLAB_OUT_DIR or cwd)");

    // synth
    SynthArgs synth_args;
    std::string synth_name = "synth";
    int synth_bits = 16;
    auto* synth = app.add_subcommand("synth", "generate a synthetic ECG WAV plus ground-truth beat times");
    add_synth_flags(synth, synth_args);
    synth->add_option("--name", synth_name, "output file stem");
    synth->add_option("--bits", synth_bits, "PCM bit depth, 8 or 16");

    // pipeline
    fs::path pipe_input;
    std::string pipe_channel = "mono";
    double pipe_mains = 50.0, pipe_notch_bw = 2.0;
    bool pipe_no_baseline = false, pipe_csv = false, pipe_svg = false;
    DetectorArgs pipe_det;
    auto* pipeline = app.add_subcommand("pipeline", "ingest, filter, detect beats and report BPM + HRV");
    pipeline->add_option("--input", pipe_input, "input WAV path")->required();
    pipeline->add_option("--channel", pipe_channel, "left, right or mono");
    pipeline->add_option("--mains", pipe_mains, "mains frequency, 50 or 60 Hz")->check(CLI::IsMember({50.0, 60.0}));
    pipeline->add_option("--notch-bandwidth", pipe_notch_bw, "notch -3 dB bandwidth, Hz");
    pipeline->add_flag("--no-baseline", pipe_no_baseline, "skip baseline wander removal");
    pipeline->add_flag("--csv", pipe_csv, "emit per-stage CSV files");
    pipeline->add_flag("--svg", pipe_svg, "emit SVG plots");
    add_detector_flags(pipeline, pipe_det);

    // design
    bool design_table1 = false, design_json = false;
    auto* design = app.add_subcommand("design", "verify the analog front-end design equations");
    design->add_flag("--table1", design_table1, "also check the AD620 gain table");
    design->add_flag("--json", design_json, "machine-readable report");

    // filter
    FilterArgs filter_args;
    fs::path filter_apply, filter_coeffs_out, filter_response_out, filter_output;
    std::string filter_channel = "mono";
    std::size_t response_points = 512;
    double response_fs = 2.0;
    auto* filter = app.add_subcommand("filter", "design a filter; optionally apply it and dump its response");
    filter->add_option("--design", filter_args.design, "butterworth-lowpass, butterworth-highpass, notch, classical")
        ->check(CLI::IsMember({"butterworth-lowpass", "butterworth-highpass", "notch", "classical"}));
    filter->add_option("--order", filter_args.order, "Butterworth order");
    filter->add_option("--wn", filter_args.wn, "cutoff, fraction of Nyquist");
    filter->add_option("--notch-w0", filter_args.notch_w0, "notch center, fraction of Nyquist");
    filter->add_option("--notch-bandwidth", filter_args.notch_bw, "notch -3 dB width, fraction of Nyquist");
    filter->add_option("--classical-kind", filter_args.classical_kind, "lowpass, highpass or bandpass");
    filter->add_option("--fpass1", filter_args.fpass1);
    filter->add_option("--fpass2", filter_args.fpass2);
    filter->add_option("--fstop1", filter_args.fstop1);
    filter->add_option("--fstop2", filter_args.fstop2);
    filter->add_option("--ripple", filter_args.ripple, "passband ripple, dB");
    filter->add_option("--atten", filter_args.atten, "stopband attenuation, dB");
    filter->add_option("--coeffs-out", filter_coeffs_out, "write coefficients CSV here");
    filter->add_option("--response-out", filter_response_out, "write frequency response CSV here");
    filter->add_option("--response-points", response_points);
    filter->add_option("--response-fs", response_fs, "sample rate used to label response frequencies");
    filter->add_option("--apply", filter_apply, "WAV to filter");
    filter->add_option("--channel", filter_channel, "channel of --apply input");
    filter->add_option("--output", filter_output, "filtered record CSV path");

    // spectrum
    fs::path spec_input, spec_output;
    std::string spec_channel = "mono";
    auto* spectrum = app.add_subcommand("spectrum", "single-sided amplitude spectrum of a WAV");
    spectrum->add_option("--input", spec_input, "input WAV path")->required();
    spectrum->add_option("--channel", spec_channel, "left, right or mono");
    spectrum->add_option("--output", spec_output, "spectrum CSV path");

    // detect
    fs::path det_input;
    std::string det_channel = "mono";
    bool det_csv = false;
    DetectorArgs det_args;
    auto* detect = app.add_subcommand("detect", "beat detection and BPM report");
    detect->add_option("--input", det_input, "input WAV path")->required();
    detect->add_option("--channel", det_channel, "left, right or mono");
    detect->add_flag("--csv", det_csv, "emit beats.csv");
    add_detector_flags(detect, det_args);

    // hrv
    fs::path hrv_input;
    double hrv_bin_width = 1.0 / 128.0, hrv_resample = 4.0;
    bool hrv_csv = false, hrv_svg = false;
    auto* hrv = app.add_subcommand("hrv", "HRV statistics from an RR interval file");
    hrv->add_option("--rr", hrv_input, "RR interval file, one interval (seconds) per line")->required();
    hrv->add_option("--bin-width", hrv_bin_width, "histogram bin width, seconds");
    hrv->add_option("--resample", hrv_resample, "tachogram resample rate, Hz");
    hrv->add_flag("--csv", hrv_csv, "emit CSV files");
    hrv->add_flag("--svg", hrv_svg, "emit SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgs;
    }

    try {
        if (*synth) return cmd_synth(synth_args, out_dir, synth_name, synth_bits);
        if (*pipeline)
            return cmd_pipeline(pipe_input, pipe_channel, pipe_mains, pipe_notch_bw, !pipe_no_baseline, pipe_det,
                                out_dir, pipe_csv, pipe_svg);
        if (*design) return cmd_design(design_table1, design_json);
        if (*detect) return cmd_detect(det_input, det_channel, det_args, out_dir, det_csv);
        if (*hrv) return cmd_hrv(hrv_input, hrv_bin_width, hrv_resample, out_dir, hrv_csv, hrv_svg);
        if (*spectrum) {
            auto record = ecglab::read_wav(spec_input, parse_channel(spec_channel));
            auto s = ecglab::single_sided_spectrum(record);
            if (!spec_output.empty()) ecglab::csv::write_spectrum(s, spec_output);
            std::size_t peak = 0;
            for (std::size_t k = 1; k < s.amplitude.size(); ++k)
                if (s.amplitude[k] > s.amplitude[peak]) peak = k;
            json out{{"bins", s.amplitude.size()},
                     {"peak_frequency_hz", s.frequencies_hz[peak]},
                     {"peak_amplitude", s.amplitude[peak]}};
            std::cout << out.dump(2) << '\n';
            return kExitOk;
        }
        if (*filter) {
            auto coeffs = design_from_args(filter_args);
            if (!filter_coeffs_out.empty()) ecglab::csv::write_coefficients(coeffs, filter_coeffs_out);
            if (!filter_response_out.empty())
                ecglab::csv::write_response(ecglab::frequency_response(coeffs, response_points, response_fs),
                                            filter_response_out);
            if (!filter_apply.empty()) {
                auto record = ecglab::read_wav(filter_apply, parse_channel(filter_channel));
                auto filtered = ecglab::apply_filter(coeffs, record);
                if (!filter_output.empty()) ecglab::csv::write_record(filtered, filter_output);
            }
            json out{{"order", coeffs.a.size() - 1},
                     {"b", coeffs.b},
                     {"a", coeffs.a},
                     {"max_pole_modulus", ecglab::max_pole_modulus(coeffs)}};
            std::cout << out.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const ecglab::degenerate_signal_error& e) {
        std::cout << json{{"error", e.what()}, {"kind", "degenerate_signal"}}.dump() << '\n';
        return kExitDegenerate;
    } catch (const ecglab::io_error& e) {
        std::cout << json{{"error", e.what()}, {"kind", "io"}}.dump() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cout << json{{"error", e.what()}, {"kind", "invalid_argument"}}.dump() << '\n';
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
