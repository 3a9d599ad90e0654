#include "cbw/presets.hpp"

#include <stdexcept>

namespace cbw
{
namespace
{

Scenario base_block(double df_hz)
{
    Scenario s;
    MziStage first;
    first.upper.freq_offset_hz = df_hz;
    MziStage second;
    second.upper.freq_offset_hz = -df_hz;
    s.chain.elements = {first, CouplingSection{}, second};
    s.t_start_s = 0.0;
    s.t_end_s = 12.0;
    s.sample_rate_hz = 1000.0;
    s.input_intensity = 1.0;
    s.wavelength_nm = 605.966;
    return s;
}

} // namespace

Scenario preset(const std::string& name, std::optional<int> n, std::optional<double> df_hz)
{
    const double df = df_hz.value_or(1.0);

    if (name == "cbw")
    {
        return base_block(df);
    }
    if (name == "usckd")
    {
        Scenario s = base_block(df);
        std::get<MziStage>(s.chain.elements[2]).upper.freq_offset_hz = df;
        return s;
    }
    if (name == "fig3a")
    {
        Scenario s = base_block(df);
        s.events = {{4.0, "coupling1.upper", PathField::transmission, 0.0},
                    {8.0, "coupling1.upper", PathField::transmission, 1.0}};
        return s;
    }
    if (name == "fig3b")
    {
        Scenario s = base_block(df);
        s.events = {{3.0, "stage1.lower", PathField::transmission, 0.0},
                    {5.0, "stage1.lower", PathField::transmission, 1.0},
                    {7.0, "stage2.lower", PathField::transmission, 0.0},
                    {9.0, "stage2.lower", PathField::transmission, 1.0}};
        return s;
    }
    if (name == "fig3c")
    {
        Scenario s = base_block(df);
        s.events = {{4.0, "stage2.upper", PathField::freq_offset, df},
                    {8.0, "stage2.upper", PathField::freq_offset, -df}};
        return s;
    }
    if (name == "cascade")
    {
        if (!n)
        {
            throw std::invalid_argument("preset 'cascade' requires n");
        }
        if (*n < 1)
        {
            throw std::invalid_argument("preset 'cascade': n must be >= 1");
        }
        Scenario s = base_block(df);
        s.chain = canonical_cascade(static_cast<std::size_t>(*n), df);
        return s;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected cbw|usckd|fig3a|fig3b|fig3c|cascade)");
}

} // namespace cbw
