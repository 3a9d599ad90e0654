#ifndef CBW_TIMESIM_HPP
#define CBW_TIMESIM_HPP

#include "cbw/chain.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cbw
{

// One scheduled manipulation of an addressed chain field.
struct Event
{
    double time_s = 0.0;
    std::string path;
    PathField field = PathField::transmission;
    double value = 0.0;
};

struct Scenario
{
    Chain chain;
    std::vector<Event> events; // time-ordered
    double t_start_s = 0.0;
    double t_end_s = 12.0;
    double sample_rate_hz = 1000.0;
    double input_intensity = 1.0;   // I_0
    double wavelength_nm = 605.966; // lambda_0
};

struct TimeSeries
{
    std::vector<double> times_s;
    // Equal-length value sequences; simulate() fills I_A, I_B, I_C, I_D.
    std::map<std::string, std::vector<double>> channels;
};

std::vector<std::string> validate_scenario(const Scenario& s);

std::size_t sample_count(const Scenario& s);

// Piecewise-constant frequency-offset history. Phase accumulates
// continuously across segment boundaries:
//   phi(t) = phi0 + 2*pi * integral_0^t df(tau) dtau.
struct FreqSegment
{
    double start_s = 0.0;
    double freq_offset_hz = 0.0;
};

double arm_phase(double initial_phase_rad, const std::vector<FreqSegment>& history, double t_s);

// Scenario state resolved against the event schedule; a pure function of
// time, so evaluation order cannot change any sampled value.
class ScenarioTimeline
{
public:
    explicit ScenarioTimeline(Scenario s); // throws std::invalid_argument on invalid scenarios

    const Scenario& scenario() const { return scenario_; }

    // Chain with transmissions, psi, offsets and initial phases as of time t
    // (events at exactly t already applied).
    Chain chain_at(double t_s) const;

    // Per-stage phase difference (upper minus lower) at time t.
    PhaseAssignment phases_at(double t_s) const;

    // True when every transmission in the chain equals 1 at time t.
    bool lossless_at(double t_s) const;

private:
    struct StepFn
    {
        double initial = 0.0;
        std::vector<std::pair<double, double>> steps; // (time, value), time-sorted
        double at(double t) const;
    };
    struct PhaseFn
    {
        StepFn phi0;
        std::vector<FreqSegment> segments;
        double at(double t) const;
    };

    Scenario scenario_;
    std::vector<std::array<PhaseFn, 2>> arm_phase_;  // per stage: upper, lower
    std::vector<std::array<StepFn, 2>> arm_trans_;   // per stage: upper, lower
    std::vector<StepFn> coupling_psi_;               // per coupling
    std::vector<std::array<StepFn, 2>> coupling_trans_;
};

// Samples detector intensities over the scenario grid. Channels:
//   I_A, I_B: ports after the first stage,
//   I_C, I_D: ports after the last element.
TimeSeries simulate(const Scenario& s);

// Ordered, human-readable record of the event schedule.
std::vector<std::pair<double, std::string>> event_timeline(const Scenario& s);

} // namespace cbw

#endif // CBW_TIMESIM_HPP
