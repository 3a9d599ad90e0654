#ifndef CBW_ANALYSIS_HPP
#define CBW_ANALYSIS_HPP

#include "cbw/timesim.hpp"

#include <stdexcept>
#include <string>

namespace cbw
{

struct AnalysisError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Signal carries no usable modulation (constant or below threshold).
struct NoModulationError : AnalysisError
{
    using AnalysisError::AnalysisError;
};

// Window does not span enough of the signal for the requested estimate.
struct WindowTooShortError : AnalysisError
{
    using AnalysisError::AnalysisError;
};

// (max + min) vanished, so the contrast ratio is undefined.
struct UndefinedVisibilityError : AnalysisError
{
    using AnalysisError::AnalysisError;
};

struct PeriodEstimate
{
    double period_s = 0.0;
    int crossings_used = 0;
    double uncertainty_s = 0.0;
};

// Modulation period from mean-level crossings (mean subtracted, hysteresis
// band of 1% of the peak-to-peak swing, crossings located by linear
// interpolation). Period = 2 x mean crossing spacing; uncertainty = one
// sample interval.
PeriodEstimate estimate_period(const TimeSeries& ts, const std::string& channel);

// (max - min) / (max + min).
double visibility(const TimeSeries& ts, const std::string& channel);

// Amplitude of the single-frequency projection (2/T) |sum s(t_i) e^{-i 2 pi f t_i} dt|,
// with the window truncated to the largest whole number of cycles of f.
double frequency_component(const TimeSeries& ts, const std::string& channel, double f_hz);

enum class WavelengthKind
{
    cbw,
    pbw
};

struct WavelengthQuery
{
    double lambda0_nm = 0.0;
    int order = 1; // number of chained blocks (cbw) or photon number (pbw)
    WavelengthKind kind = WavelengthKind::cbw;
};

// lambda0 / (2 * order) for both kinds.
double effective_wavelength(const WavelengthQuery& q);

// Samples with t0 <= t < t1, all channels kept aligned.
TimeSeries slice(const TimeSeries& ts, double t0_s, double t1_s);

} // namespace cbw

#endif // CBW_ANALYSIS_HPP
