#include "cbw/timesim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cbw
{
namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i > 0)
        {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::string format_time(double t)
{
    std::ostringstream oss;
    oss << t;
    return oss.str();
}

// 2*pi * integral_0^t of the piecewise-constant offset; segments are
// start-time sorted and the first one covers the run from t = 0.
double accumulated_phase(const std::vector<FreqSegment>& segments, double t)
{
    double cycles = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i)
    {
        const double seg_start = segments[i].start_s;
        if (seg_start >= t)
        {
            break;
        }
        const double seg_end = (i + 1 < segments.size()) ? std::min(segments[i + 1].start_s, t) : t;
        if (seg_end > seg_start)
        {
            cycles += segments[i].freq_offset_hz * (seg_end - seg_start);
        }
    }
    return kTwoPi * cycles;
}

} // namespace

std::size_t sample_count(const Scenario& s)
{
    const double span = s.t_end_s - s.t_start_s;
    if (!(span > 0.0) || !(s.sample_rate_hz > 0.0))
    {
        return 0;
    }
    // Inclusive grid; the relative slack keeps n stable when span*rate lands
    // a rounding error below an integer.
    const double n = std::floor(span * s.sample_rate_hz * (1.0 + 1e-12));
    return static_cast<std::size_t>(n) + 1;
}

std::vector<std::string> validate_scenario(const Scenario& s)
{
    std::vector<std::string> errors = validate_chain(s.chain);

    if (!std::isfinite(s.t_start_s) || !std::isfinite(s.t_end_s) || !(s.t_start_s < s.t_end_s))
    {
        errors.push_back("window: t_start_s must be below t_end_s");
    }
    else if (s.t_start_s < 0.0)
    {
        errors.push_back("window: t_start_s must be >= 0 (phases accumulate from t = 0)");
    }
    if (!(s.sample_rate_hz > 0.0) || !std::isfinite(s.sample_rate_hz))
    {
        errors.push_back("sample_rate_hz: must be positive");
    }
    else if (sample_count(s) < 2)
    {
        errors.push_back("sampling grid: needs at least 2 samples");
    }
    if (!(s.input_intensity > 0.0) || !std::isfinite(s.input_intensity))
    {
        errors.push_back("input_intensity: must be positive");
    }
    if (!(s.wavelength_nm > 0.0) || !std::isfinite(s.wavelength_nm))
    {
        errors.push_back("wavelength_nm: must be positive");
    }

    for (std::size_t i = 0; i < s.events.size(); ++i)
    {
        const Event& ev = s.events[i];
        const std::string label = "events[" + std::to_string(i) + "]";
        if (i > 0 && ev.time_s < s.events[i - 1].time_s)
        {
            errors.push_back("events: must be sorted by time (violated at index " + std::to_string(i) +
                             ")");
        }
        if (!std::isfinite(ev.time_s) || ev.time_s < s.t_start_s || ev.time_s > s.t_end_s)
        {
            errors.push_back(label + ": time " + format_time(ev.time_s) + " outside scenario window");
        }
        try
        {
            resolve_path(s.chain, ev.path, ev.field);
        }
        catch (const std::exception& e)
        {
            errors.push_back(label + ": " + e.what());
        }
        if (ev.field == PathField::transmission)
        {
            if (!(ev.value >= 0.0 && ev.value <= 1.0))
            {
                errors.push_back(label + ": transmission " + format_time(ev.value) +
                                 " out of range [0,1]");
            }
        }
        else if (!std::isfinite(ev.value))
        {
            errors.push_back(label + ": value must be finite");
        }
    }
    return errors;
}

double ScenarioTimeline::StepFn::at(double t) const
{
    double v = initial;
    for (const auto& [time, value] : steps)
    {
        if (time <= t)
        {
            v = value;
        }
        else
        {
            break;
        }
    }
    return v;
}

double ScenarioTimeline::PhaseFn::at(double t) const
{
    return phi0.at(t) + accumulated_phase(segments, t);
}

double arm_phase(double initial_phase_rad, const std::vector<FreqSegment>& history, double t_s)
{
    if (!std::isfinite(t_s) || t_s < 0.0)
    {
        throw std::invalid_argument("arm_phase: t must be >= 0");
    }
    return initial_phase_rad + accumulated_phase(history, t_s);
}

ScenarioTimeline::ScenarioTimeline(Scenario s) : scenario_(std::move(s))
{
    const auto errors = validate_scenario(scenario_);
    if (!errors.empty())
    {
        throw std::invalid_argument("invalid scenario: " + join(errors, "; "));
    }

    const std::size_t n_stages = scenario_.chain.stage_count();
    const std::size_t n_couplings = scenario_.chain.coupling_count();
    arm_phase_.resize(n_stages);
    arm_trans_.resize(n_stages);
    coupling_psi_.resize(n_couplings);
    coupling_trans_.resize(n_couplings);

    std::size_t stage_idx = 0;
    std::size_t coupling_idx = 0;
    for (const auto& elem : scenario_.chain.elements)
    {
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            for (int side = 0; side < 2; ++side)
            {
                const ArmSpec& arm = side == 0 ? stage->upper : stage->lower;
                auto& ph = arm_phase_[stage_idx][static_cast<std::size_t>(side)];
                ph.phi0.initial = arm.initial_phase_rad;
                ph.segments = {{0.0, arm.freq_offset_hz}};
                arm_trans_[stage_idx][static_cast<std::size_t>(side)].initial = arm.transmission;
            }
            ++stage_idx;
        }
        else
        {
            const auto& cs = std::get<CouplingSection>(elem);
            coupling_psi_[coupling_idx].initial = cs.psi_rad;
            coupling_trans_[coupling_idx][0].initial = cs.upper_transmission;
            coupling_trans_[coupling_idx][1].initial = cs.lower_transmission;
            ++coupling_idx;
        }
    }

    for (const Event& ev : scenario_.events)
    {
        const ResolvedPath where = resolve_path(scenario_.chain, ev.path, ev.field);
        const std::size_t side = where.upper ? 0 : 1;
        switch (ev.field)
        {
        case PathField::transmission:
            if (where.kind == ResolvedPath::Kind::stage_arm)
            {
                arm_trans_[where.index][side].steps.emplace_back(ev.time_s, ev.value);
            }
            else
            {
                coupling_trans_[where.index][side].steps.emplace_back(ev.time_s, ev.value);
            }
            break;
        case PathField::psi:
            coupling_psi_[where.index].steps.emplace_back(ev.time_s, ev.value);
            break;
        case PathField::freq_offset:
            arm_phase_[where.index][side].segments.push_back({ev.time_s, ev.value});
            break;
        case PathField::initial_phase:
            arm_phase_[where.index][side].phi0.steps.emplace_back(ev.time_s, ev.value);
            break;
        }
    }
}

Chain ScenarioTimeline::chain_at(double t_s) const
{
    Chain out = scenario_.chain;
    std::size_t stage_idx = 0;
    std::size_t coupling_idx = 0;
    for (auto& elem : out.elements)
    {
        if (auto* stage = std::get_if<MziStage>(&elem))
        {
            for (int side = 0; side < 2; ++side)
            {
                ArmSpec& arm = side == 0 ? stage->upper : stage->lower;
                const auto& ph = arm_phase_[stage_idx][static_cast<std::size_t>(side)];
                arm.transmission = arm_trans_[stage_idx][static_cast<std::size_t>(side)].at(t_s);
                arm.initial_phase_rad = ph.phi0.at(t_s);
                arm.freq_offset_hz = ph.segments.empty() ? 0.0 : ph.segments.back().freq_offset_hz;
                for (auto it = ph.segments.rbegin(); it != ph.segments.rend(); ++it)
                {
                    if (it->start_s <= t_s)
                    {
                        arm.freq_offset_hz = it->freq_offset_hz;
                        break;
                    }
                }
            }
            ++stage_idx;
        }
        else
        {
            auto& cs = std::get<CouplingSection>(elem);
            cs.psi_rad = coupling_psi_[coupling_idx].at(t_s);
            cs.upper_transmission = coupling_trans_[coupling_idx][0].at(t_s);
            cs.lower_transmission = coupling_trans_[coupling_idx][1].at(t_s);
            ++coupling_idx;
        }
    }
    return out;
}

PhaseAssignment ScenarioTimeline::phases_at(double t_s) const
{
    PhaseAssignment phases;
    for (std::size_t k = 0; k < arm_phase_.size(); ++k)
    {
        phases[k] = arm_phase_[k][0].at(t_s) - arm_phase_[k][1].at(t_s);
    }
    return phases;
}

bool ScenarioTimeline::lossless_at(double t_s) const
{
    for (const auto& stage : arm_trans_)
    {
        if (stage[0].at(t_s) != 1.0 || stage[1].at(t_s) != 1.0)
        {
            return false;
        }
    }
    for (const auto& coupling : coupling_trans_)
    {
        if (coupling[0].at(t_s) != 1.0 || coupling[1].at(t_s) != 1.0)
        {
            return false;
        }
    }
    return true;
}

TimeSeries simulate(const Scenario& s)
{
    const ScenarioTimeline timeline(s); // validates

    const std::size_t n = sample_count(s);
    TimeSeries series;
    series.times_s.reserve(n);
    for (const char* name : {"I_A", "I_B", "I_C", "I_D"})
    {
        series.channels[name].reserve(n);
    }

    const FieldPair input{Complex{std::sqrt(s.input_intensity), 0.0}, Complex{}};
    for (std::size_t i = 0; i < n; ++i)
    {
        const double t = s.t_start_s + static_cast<double>(i) / s.sample_rate_hz;
        const Chain chain = timeline.chain_at(t);
        const auto prefixes = monitor_matrices(chain, timeline.phases_at(t));
        const FieldPair after_first = apply(prefixes.front(), input);
        const FieldPair output = apply(prefixes.back(), input);

        series.times_s.push_back(t);
        series.channels["I_A"].push_back(intensity(after_first.upper));
        series.channels["I_B"].push_back(intensity(after_first.lower));
        series.channels["I_C"].push_back(intensity(output.upper));
        series.channels["I_D"].push_back(intensity(output.lower));
    }
    return series;
}

std::vector<std::pair<double, std::string>> event_timeline(const Scenario& s)
{
    const auto errors = validate_scenario(s);
    if (!errors.empty())
    {
        throw std::invalid_argument("invalid scenario: " + join(errors, "; "));
    }

    std::vector<std::pair<double, std::string>> out;
    out.reserve(s.events.size());
    for (const Event& ev : s.events)
    {
        std::string desc;
        switch (ev.field)
        {
        case PathField::transmission:
            if (ev.value == 0.0)
            {
                desc = "block " + ev.path;
            }
            else if (ev.value == 1.0)
            {
                desc = "unblock " + ev.path;
            }
            else
            {
                desc = "set " + ev.path + " transmission to " + format_time(ev.value);
            }
            break;
        case PathField::psi:
            desc = "set " + ev.path + " coupling phase to " + format_time(ev.value) + " rad";
            break;
        case PathField::freq_offset:
            desc = "set " + ev.path + " frequency offset to " + format_time(ev.value) + " Hz";
            break;
        case PathField::initial_phase:
            desc = "set " + ev.path + " initial phase to " + format_time(ev.value) + " rad";
            break;
        }
        out.emplace_back(ev.time_s, desc);
    }
    return out;
}

} // namespace cbw
