#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecglab::frontend {

// AD620 internal gain resistors: two 24.7k trimmed resistors.
inline constexpr double kAd620GainConstantOhms = 49400.0;

/// AD620 gain law: G = 1 + 49.4k / Rg.
inline double ad620_gain(double rg_ohms) {
    if (!(rg_ohms > 0)) throw std::invalid_argument("ad620_gain: Rg must be positive");
    return 1.0 + kAd620GainConstantOhms / rg_ohms;
}

/// Exact inverse of the gain law, valid for gains above 1.
inline double rg_for_gain(double gain) {
    if (!(gain > 1)) throw std::invalid_argument("rg_for_gain: gain must exceed 1");
    return kAd620GainConstantOhms / (gain - 1.0);
}

/// First-order RC corner frequency, 1 / (2 pi R C).
inline double rc_cutoff(double r_ohms, double c_farads) {
    if (!(r_ohms > 0) || !(c_farads > 0))
        throw std::invalid_argument("rc_cutoff: components must be positive");
    return 1.0 / (2.0 * std::numbers::pi * r_ohms * c_farads);
}

/// Solves 1/(2 pi R C) = cutoff for the missing component. The RC relation is
/// symmetric, so the same expression serves both directions.
inline double component_for_cutoff(double cutoff_hz, double known_component) {
    if (!(cutoff_hz > 0) || !(known_component > 0))
        throw std::invalid_argument("component_for_cutoff: inputs must be positive");
    return 1.0 / (2.0 * std::numbers::pi * cutoff_hz * known_component);
}

struct CascadeStage {
    double gain = 1.0;
    double input_noise = 0.0;
};

/// Output noise of a gain cascade: each stage's input noise is added and then
/// amplified by every remaining stage, ((n1 A1 + n2) A2 + n3) A3 and so on.
inline double cascade_output_noise(const std::vector<CascadeStage>& stages) {
    if (stages.empty()) throw std::invalid_argument("cascade_output_noise: empty cascade");
    double acc = 0.0;
    for (const auto& s : stages) acc = (acc + s.input_noise) * s.gain;
    return acc;
}

/// Inverting op-amp gain magnitude, Rf / Rin.
inline double inverting_gain(double r_feedback_ohms, double r_input_ohms) {
    if (!(r_feedback_ohms > 0) || !(r_input_ohms > 0))
        throw std::invalid_argument("inverting_gain: resistances must be positive");
    return r_feedback_ohms / r_input_ohms;
}

struct GainTableRow {
    double rg_ohms;
    double table_gain;
    double computed_gain;
    double relative_error;
    bool pass;
};

/// Checks the AD620 datasheet gain table (nine rows, 1% and 0.1% resistor
/// columns interleaved) against the gain law at 0.5% relative tolerance.
inline std::vector<GainTableRow> verify_gain_table() {
    // {Rg ohms, published gain} for both standard-value columns.
    static constexpr std::pair<double, double> kRows[] = {
        {49900, 1.990}, {49300, 2.002},
        {12400, 4.984}, {12400, 4.984},
        {5490, 9.998},  {5490, 9.998},
        {2610, 19.93},  {2610, 19.93},
        {1000, 50.40},  {1010, 49.91},
        {499, 100.0},   {499, 100.0},
        {249, 199.4},   {249, 199.4},
        {100, 495.0},   {98.8, 501.0},
        {49.9, 991.0},  {49.3, 1003.0},
    };
    std::vector<GainTableRow> report;
    for (const auto& [rg, g_table] : kRows) {
        GainTableRow row;
        row.rg_ohms = rg;
        row.table_gain = g_table;
        row.computed_gain = ad620_gain(rg);
        row.relative_error = std::abs(row.computed_gain - g_table) / g_table;
        row.pass = row.relative_error <= 0.005;
        report.push_back(row);
    }
    return report;
}

struct ReportItem {
    std::string name;
    double computed;
    double target;
    double tolerance_rel;  // 0 means exact
    bool pass;
    bool discrepant;  // the published value disagrees with its own formula
    std::string note;
};

struct FrontEndReport {
    double instrumentation_gain = 0;
    double highpass_corner_hz = 0;  // 0.05 Hz drift-blocking corner
    double lowpass_corner_hz = 0;   // 150 Hz corner
    double drl_gain = 0;
    double drl_lowpass_hz = 0;
    double dc_shift_gain = 0;
    double filter_stage_gain = 0;
    std::vector<ReportItem> items;

    bool all_pass() const {
        for (const auto& it : items)
            if (!it.discrepant && !it.pass) return false;
        return true;
    }
};

/// Computes every derived quantity of the published analog front end and
/// checks it against the stated design values. The labels normalize the
/// source's swapped high/low-pass naming: 0.05 Hz is the high-pass
/// (drift-blocking) corner, 150 Hz the low-pass corner.
inline FrontEndReport build_reference_design() {
    FrontEndReport r;

    auto check = [&](std::string name, double computed, double target, double tol, bool discrepant = false,
                     std::string note = {}) {
        const bool pass = tol == 0.0 ? computed == target : std::abs(computed - target) / target <= tol;
        r.items.push_back({std::move(name), computed, target, tol, pass, discrepant, std::move(note)});
        return computed;
    };

    r.highpass_corner_hz = check("highpass_corner_hz", rc_cutoff(3.18e6, 1e-6), 0.05, 0.01);
    r.lowpass_corner_hz = check("lowpass_corner_hz", rc_cutoff(106e3, 10e-9), 150.0, 0.01);
    r.dc_shift_gain = check("dc_shift_gain", inverting_gain(125e3, 5e3), 25.0, 0.0);
    r.drl_gain = check("drl_gain", inverting_gain(1e6, 25e3), 40.0, 0.0);
    r.drl_lowpass_hz = check("drl_lowpass_hz", rc_cutoff(10e3, 106e-9), 150.0, 0.01);
    r.filter_stage_gain = check("filter_stage_gain", 5.0, 5.0, 0.0, false,
                                "stated constant; no resistor network published for this stage");
    // The build log claims a 27k Rg gave a gain of 10; the gain law says 2.83.
    r.instrumentation_gain =
        check("instrumentation_gain_27k", ad620_gain(27e3), 10.0, 0.0, true,
              "claimed gain 10 contradicts the gain law; both values recorded");
    check("total_midband_gain", r.instrumentation_gain * r.filter_stage_gain * r.dc_shift_gain,
          r.instrumentation_gain * r.filter_stage_gain * r.dc_shift_gain, 0.0, false,
          "product of realized stage gains");
    return r;
}

}  // namespace ecglab::frontend
