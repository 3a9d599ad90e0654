#include "cbw/presets.hpp"
#include "cbw/timesim.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cbw;

namespace
{
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double max_abs_dev(const std::vector<double>& values, const std::vector<double>& reference)
{
    REQUIRE(values.size() == reference.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        worst = std::max(worst, std::abs(values[i] - reference[i]));
    }
    return worst;
}
} // namespace

TEST_CASE("arm_phase examples")
{
    CHECK(std::abs(arm_phase(0.0, {{0.0, 1.0}}, 1.0) - kTwoPi) < 1e-12);
    CHECK(arm_phase(0.7, {{0.0, 0.0}}, 5.0) == 0.7);
    // +1 Hz until t = 2, then -1 Hz: phi(3) = 2 pi (2 - 1)
    CHECK(std::abs(arm_phase(0.0, {{0.0, 1.0}, {2.0, -1.0}}, 3.0) - kTwoPi) < 1e-12);
    CHECK_THROWS_AS(arm_phase(0.0, {{0.0, 1.0}}, -1.0), std::invalid_argument);
}

TEST_CASE("validate_scenario")
{
    Scenario ok = preset("cbw");
    CHECK(validate_scenario(ok).empty());

    Scenario bad_window = ok;
    bad_window.t_end_s = bad_window.t_start_s;
    CHECK_FALSE(validate_scenario(bad_window).empty());

    Scenario negative_start = ok;
    negative_start.t_start_s = -1.0;
    CHECK_FALSE(validate_scenario(negative_start).empty());

    Scenario unsorted = ok;
    unsorted.events = {{8.0, "coupling1.upper", PathField::transmission, 0.0},
                       {4.0, "coupling1.upper", PathField::transmission, 1.0}};
    bool found = false;
    for (const auto& e : validate_scenario(unsorted))
    {
        found = found || e.find("sorted") != std::string::npos;
    }
    CHECK(found);

    Scenario outside = ok;
    outside.events = {{20.0, "coupling1.upper", PathField::transmission, 0.0}};
    CHECK_FALSE(validate_scenario(outside).empty());

    Scenario bad_path = ok;
    bad_path.events = {{4.0, "stage7.upper", PathField::transmission, 0.0}};
    CHECK_FALSE(validate_scenario(bad_path).empty());

    Scenario bad_value = ok;
    bad_value.events = {{4.0, "stage1.upper", PathField::transmission, 1.5}};
    CHECK_FALSE(validate_scenario(bad_value).empty());

    CHECK_THROWS_AS(simulate(bad_value), std::invalid_argument);
}

TEST_CASE("cbw preset doubles the modulation frequency")
{
    const TimeSeries ts = simulate(preset("cbw"));
    REQUIRE(ts.times_s.size() == 12001);

    const auto& id = ts.channels.at("I_D");
    const auto& ic = ts.channels.at("I_C");
    CHECK(id[0] == 0.0);
    CHECK(std::abs(ic[0] - 1.0) < 1e-12);

    std::vector<double> id_model(ts.times_s.size());
    std::vector<double> ic_model(ts.times_s.size());
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        id_model[i] = 0.5 * (1.0 - std::cos(2.0 * kTwoPi * ts.times_s[i]));
        ic_model[i] = 0.5 * (1.0 + std::cos(2.0 * kTwoPi * ts.times_s[i]));
    }
    CHECK(max_abs_dev(id, id_model) <= 1e-12);
    CHECK(max_abs_dev(ic, ic_model) <= 1e-12);

    // first-stage taps keep the single-MZI law
    std::vector<double> ia_model(ts.times_s.size());
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        ia_model[i] = 0.5 * (1.0 - std::cos(kTwoPi * ts.times_s[i]));
    }
    CHECK(max_abs_dev(ts.channels.at("I_A"), ia_model) <= 1e-12);
}

TEST_CASE("usckd preset freezes the output")
{
    const TimeSeries ts = simulate(preset("usckd"));
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        CHECK(std::abs(ts.channels.at("I_C")[i] - 1.0) < 1e-12);
        CHECK(ts.channels.at("I_D")[i] < 1e-12);
    }
}

TEST_CASE("blocked coupling path reduces the doubled fringe to I0/8 swing")
{
    Scenario s = preset("cbw");
    s.chain = set_path(s.chain, "coupling1.upper", PathField::transmission, 0.0);
    s.t_end_s = 4.0;
    const TimeSeries ts = simulate(s);
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        const double model = (1.0 - std::cos(2.0 * kTwoPi * ts.times_s[i])) / 8.0;
        CHECK(std::abs(ts.channels.at("I_D")[i] - model) <= 1e-12);
    }
}

TEST_CASE("energy conservation on lossless samples")
{
    for (const char* name : {"cbw", "usckd", "fig3a", "fig3b", "fig3c"})
    {
        const Scenario s = preset(name);
        const ScenarioTimeline timeline(s);
        const TimeSeries ts = simulate(s);
        for (std::size_t i = 0; i < ts.times_s.size(); ++i)
        {
            if (!timeline.lossless_at(ts.times_s[i]))
            {
                continue;
            }
            CHECK(std::abs(ts.channels.at("I_A")[i] + ts.channels.at("I_B")[i] - 1.0) < 1e-12);
            CHECK(std::abs(ts.channels.at("I_C")[i] + ts.channels.at("I_D")[i] - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("intensities stay within [0, I0]")
{
    for (const char* name : {"cbw", "fig3a", "fig3b", "fig3c"})
    {
        const TimeSeries ts = simulate(preset(name));
        for (const auto& [channel, values] : ts.channels)
        {
            for (const double v : values)
            {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0 * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("doubling the sample rate reproduces shared samples exactly")
{
    Scenario coarse = preset("fig3c");
    Scenario fine = coarse;
    fine.sample_rate_hz = 2000.0;

    const TimeSeries a = simulate(coarse);
    const TimeSeries b = simulate(fine);
    REQUIRE(b.times_s.size() == 2 * a.times_s.size() - 1);
    for (std::size_t i = 0; i < a.times_s.size(); ++i)
    {
        CHECK(a.times_s[i] == b.times_s[2 * i]);
        for (const char* channel : {"I_A", "I_B", "I_C", "I_D"})
        {
            CHECK(a.channels.at(channel)[i] == b.channels.at(channel)[2 * i]);
        }
    }
}

TEST_CASE("fig3c freezes the moving frame while the offsets match")
{
    const TimeSeries ts = simulate(preset("fig3c"));
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        const double t = ts.times_s[i];
        if (t >= 4.0 && t <= 8.0)
        {
            CHECK(std::abs(ts.channels.at("I_C")[i] - 1.0) < 1e-12);
            CHECK(ts.channels.at("I_D")[i] < 1e-12);
        }
        else
        {
            const double model = 0.5 * (1.0 - std::cos(2.0 * kTwoPi * t));
            CHECK(std::abs(ts.channels.at("I_D")[i] - model) <= 1e-12);
        }
    }
}

TEST_CASE("fig3b blocked intervals collapse to a single constant path")
{
    // With one stage arm blocked the surviving light crosses the middle
    // beam-splitter pair into a single arm, so the balanced chain shows a
    // constant quarter of the input on both detectors.
    const TimeSeries ts = simulate(preset("fig3b"));
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        const double t = ts.times_s[i];
        const bool blocked = (t >= 3.0 && t < 5.0) || (t >= 7.0 && t < 9.0);
        if (blocked)
        {
            CHECK(std::abs(ts.channels.at("I_C")[i] - 0.25) < 1e-12);
            CHECK(std::abs(ts.channels.at("I_D")[i] - 0.25) < 1e-12);
        }
    }
}

TEST_CASE("event_timeline")
{
    const auto timeline = event_timeline(preset("fig3a"));
    REQUIRE(timeline.size() == 2);
    CHECK(timeline[0].first == 4.0);
    CHECK(timeline[0].second.find("block") != std::string::npos);
    CHECK(timeline[1].first == 8.0);
    CHECK(timeline[1].second.find("unblock") != std::string::npos);

    CHECK(event_timeline(preset("cbw")).empty());

    Scenario unsorted = preset("cbw");
    unsorted.events = {{8.0, "coupling1.upper", PathField::transmission, 0.0},
                       {4.0, "coupling1.upper", PathField::transmission, 1.0}};
    CHECK_THROWS_AS(event_timeline(unsorted), std::invalid_argument);
}

TEST_CASE("chain_at reflects events left-closed")
{
    const ScenarioTimeline timeline(preset("fig3a"));
    CHECK(std::get<CouplingSection>(timeline.chain_at(3.999).elements[1]).upper_transmission == 1.0);
    CHECK(std::get<CouplingSection>(timeline.chain_at(4.0).elements[1]).upper_transmission == 0.0);
    CHECK(std::get<CouplingSection>(timeline.chain_at(7.999).elements[1]).upper_transmission == 0.0);
    CHECK(std::get<CouplingSection>(timeline.chain_at(8.0).elements[1]).upper_transmission == 1.0);
    CHECK(timeline.lossless_at(2.0));
    CHECK_FALSE(timeline.lossless_at(5.0));
}

TEST_CASE("preset errors")
{
    CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
    CHECK_THROWS_AS(preset("cascade"), std::invalid_argument);
    CHECK(preset("cascade", 3).chain.stage_count() == 6);
}
