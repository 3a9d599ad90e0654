#include "cbw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace cbw
{
namespace
{

const std::vector<double>& channel_values(const TimeSeries& ts, const std::string& channel)
{
    const auto it = ts.channels.find(channel);
    if (it == ts.channels.end())
    {
        throw std::invalid_argument("channel '" + channel + "' not present in series");
    }
    if (it->second.size() != ts.times_s.size())
    {
        throw std::invalid_argument("channel '" + channel + "' length does not match time axis");
    }
    return it->second;
}

} // namespace

PeriodEstimate estimate_period(const TimeSeries& ts, const std::string& channel)
{
    const auto& s = channel_values(ts, channel);
    const auto& t = ts.times_s;
    if (s.size() < 2)
    {
        throw WindowTooShortError("series has fewer than 2 samples");
    }

    const auto [min_it, max_it] = std::minmax_element(s.begin(), s.end());
    const double lo = *min_it;
    const double hi = *max_it;
    const double ptp = hi - lo;
    const double scale = std::max(std::abs(hi), std::abs(lo));
    if (ptp <= 1e-9 * scale || ptp == 0.0)
    {
        throw NoModulationError("no modulation: peak-to-peak " + std::to_string(ptp) +
                                " below threshold");
    }

    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    const double band = 0.005 * ptp; // +-half of a 1% peak-to-peak hysteresis band

    std::vector<double> crossings;
    int regime = 0; // -1 below band, +1 above band, 0 not yet committed
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        const double x = s[i] - mean;
        const int state = x > band ? 1 : (x < -band ? -1 : 0);
        if (state == 0 || state == regime)
        {
            continue;
        }
        if (regime != 0)
        {
            // Regime flip: the signal crossed the mean somewhere behind us.
            std::size_t j = i;
            while (j > 0)
            {
                const double a = s[j - 1] - mean;
                const double b = s[j] - mean;
                if ((a <= 0.0) != (b <= 0.0) || a == 0.0)
                {
                    const double denom = b - a;
                    const double frac = denom != 0.0 ? -a / denom : 0.0;
                    crossings.push_back(t[j - 1] + frac * (t[j] - t[j - 1]));
                    break;
                }
                --j;
            }
        }
        regime = state;
    }

    if (crossings.size() < 2)
    {
        throw WindowTooShortError("window too short: fewer than 2 mean-level crossings");
    }

    const double mean_spacing =
        (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
    PeriodEstimate est;
    est.period_s = 2.0 * mean_spacing;
    est.crossings_used = static_cast<int>(crossings.size());
    est.uncertainty_s = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    return est;
}

double visibility(const TimeSeries& ts, const std::string& channel)
{
    const auto& s = channel_values(ts, channel);
    if (s.empty())
    {
        throw WindowTooShortError("empty series");
    }
    const auto [min_it, max_it] = std::minmax_element(s.begin(), s.end());
    const double sum = *max_it + *min_it;
    if (sum == 0.0)
    {
        throw UndefinedVisibilityError("visibility undefined: max + min is zero");
    }
    return (*max_it - *min_it) / sum;
}

double frequency_component(const TimeSeries& ts, const std::string& channel, double f_hz)
{
    const auto& s = channel_values(ts, channel);
    const auto& t = ts.times_s;
    if (!(f_hz > 0.0) || !std::isfinite(f_hz))
    {
        throw std::invalid_argument("frequency must be positive and finite");
    }
    if (s.size() < 2)
    {
        throw WindowTooShortError("series has fewer than 2 samples");
    }

    const double span = t.back() - t.front();
    const double cycles = std::floor(f_hz * span * (1.0 + 1e-12));
    if (cycles < 1.0)
    {
        throw WindowTooShortError("window shorter than one cycle of the requested frequency");
    }
    const double period_window = cycles / f_hz;
    const double dt = span / static_cast<double>(t.size() - 1);
    auto count = static_cast<std::size_t>(std::llround(period_window / dt));
    count = std::min(count, s.size());

    std::complex<double> acc{};
    for (std::size_t i = 0; i < count; ++i)
    {
        acc += s[i] * std::polar(1.0, -2.0 * std::numbers::pi * f_hz * t[i]);
    }
    return 2.0 / period_window * std::abs(acc * dt);
}

double effective_wavelength(const WavelengthQuery& q)
{
    if (!(q.lambda0_nm > 0.0) || !std::isfinite(q.lambda0_nm))
    {
        throw std::invalid_argument("lambda0_nm must be positive");
    }
    if (q.order < 1)
    {
        throw std::invalid_argument("order must be >= 1");
    }
    return q.lambda0_nm / (2.0 * static_cast<double>(q.order));
}

TimeSeries slice(const TimeSeries& ts, double t0_s, double t1_s)
{
    TimeSeries out;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        if (ts.times_s[i] >= t0_s && ts.times_s[i] < t1_s)
        {
            keep.push_back(i);
        }
    }
    out.times_s.reserve(keep.size());
    for (const std::size_t i : keep)
    {
        out.times_s.push_back(ts.times_s[i]);
    }
    for (const auto& [name, values] : ts.channels)
    {
        auto& column = out.channels[name];
        column.reserve(keep.size());
        for (const std::size_t i : keep)
        {
            column.push_back(values[i]);
        }
    }
    return out;
}

} // namespace cbw
