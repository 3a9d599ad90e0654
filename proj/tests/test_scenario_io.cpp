#include "cbw/presets.hpp"
#include "cbw/scenario_io.hpp"

#include <doctest.h>

#include <string>

using namespace cbw;

namespace
{
bool contains(const std::vector<std::string>& messages, const char* needle)
{
    for (const auto& msg : messages)
    {
        if (msg.find(needle) != std::string::npos)
        {
            return true;
        }
    }
    return false;
}
} // namespace

TEST_CASE("minimal document parses to a one-stage chain")
{
    const ParseResult r = parse_scenario(R"({"chain": [{"mzi": {}}]})");
    REQUIRE(r.errors.empty());
    REQUIRE(r.scenario.has_value());
    CHECK(r.scenario->chain.stage_count() == 1);
    CHECK(r.scenario->wavelength_nm == 605.966);
    CHECK(r.scenario->sample_rate_hz == 1000.0);
}

TEST_CASE("arm transmission out of range is reported with its document path")
{
    const ParseResult r = parse_scenario(
        R"({"chain": [{"mzi": {"upper": {"t": 1.3}}}]})");
    CHECK_FALSE(r.scenario.has_value());
    CHECK(contains(r.errors, "chain[0].mzi.upper.t"));
    CHECK(contains(r.errors, "out of [0,1]"));
}

TEST_CASE("coupling transmission out of range is reported with its document path")
{
    const ParseResult r = parse_scenario(
        R"({"chain": [{"mzi": {}}, {"coupling": {"t_upper": 1.3}}, {"mzi": {}}]})");
    CHECK_FALSE(r.scenario.has_value());
    CHECK(contains(r.errors, "chain[1].coupling.t_upper"));
}

TEST_CASE("unsorted events are rejected")
{
    const ParseResult r = parse_scenario(R"({
        "chain": [{"mzi": {}}, {"coupling": {}}, {"mzi": {}}],
        "events": [
            {"t_s": 8.0, "path": "coupling1.upper", "field": "transmission", "value": 0.0},
            {"t_s": 4.0, "path": "coupling1.upper", "field": "transmission", "value": 1.0}
        ]})");
    CHECK_FALSE(r.scenario.has_value());
    CHECK(contains(r.errors, "sorted"));
}

TEST_CASE("every error is collected, not just the first")
{
    const ParseResult r = parse_scenario(R"({
        "chain": [{"mzi": {"upper": {"t": 2.0}}}, {"coupling": {"t_lower": -0.5}}, {"mzi": {}}],
        "sample_rate_hz": "fast",
        "surprise": 1
    })");
    CHECK_FALSE(r.scenario.has_value());
    CHECK(r.errors.size() >= 4);
    CHECK(contains(r.errors, "chain[0].mzi.upper.t"));
    CHECK(contains(r.errors, "chain[1].coupling.t_lower"));
    CHECK(contains(r.errors, "sample_rate_hz"));
    CHECK(contains(r.errors, "unknown key"));
}

TEST_CASE("malformed json yields a document error")
{
    const ParseResult r = parse_scenario("{not json");
    CHECK_FALSE(r.scenario.has_value());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].find("document") != std::string::npos);
}

TEST_CASE("unknown event field is rejected")
{
    const ParseResult r = parse_scenario(R"({
        "chain": [{"mzi": {}}],
        "events": [{"t_s": 1.0, "path": "stage1.upper", "field": "tilt", "value": 0.0}]
    })");
    CHECK_FALSE(r.scenario.has_value());
    CHECK(contains(r.errors, "events[0].field"));
}

TEST_CASE("round-trip keeps every preset's simulation bit-identical")
{
    for (const char* name : {"cbw", "usckd", "fig3a", "fig3b", "fig3c"})
    {
        const Scenario original = preset(name);
        const ParseResult r = parse_scenario(serialize_scenario(original));
        REQUIRE_MESSAGE(r.scenario.has_value(), name);

        const TimeSeries a = simulate(original);
        const TimeSeries b = simulate(*r.scenario);
        REQUIRE(a.times_s == b.times_s);
        for (const char* channel : {"I_A", "I_B", "I_C", "I_D"})
        {
            CHECK(a.channels.at(channel) == b.channels.at(channel));
        }
    }
    const Scenario cascade = preset("cascade", 3, 0.5);
    const ParseResult r = parse_scenario(serialize_scenario(cascade));
    REQUIRE(r.scenario.has_value());
    CHECK(r.scenario->chain.stage_count() == 6);
    CHECK(simulate(cascade).channels.at("I_D") == simulate(*r.scenario).channels.at("I_D"));
}

TEST_CASE("csv format")
{
    Scenario s = preset("cbw");
    s.t_end_s = 0.01; // 11 samples
    const TimeSeries ts = simulate(s);
    const std::string csv = to_csv(ts);

    REQUIRE(csv.rfind("t,I_A,I_B,I_C,I_D\n", 0) == 0);
    std::size_t rows = 0;
    for (const char ch : csv)
    {
        rows += ch == '\n' ? 1 : 0;
    }
    CHECK(rows == 12); // header + 11 samples
    CHECK(csv.find(",\n") == std::string::npos);
    CHECK(csv.back() == '\n');
    // 9 significant digits in scientific notation
    CHECK(csv.find("1.00000000e-03") != std::string::npos);

    const TimeSeries back = read_csv(csv);
    REQUIRE(back.times_s.size() == ts.times_s.size());
    for (std::size_t i = 0; i < back.times_s.size(); ++i)
    {
        CHECK(std::abs(back.channels.at("I_C")[i] - ts.channels.at("I_C")[i]) <= 1e-9);
    }
}

TEST_CASE("csv writer is deterministic")
{
    const Scenario s = preset("fig3a");
    const TimeSeries ts = simulate(s);
    CHECK(to_csv(ts) == to_csv(simulate(s)));
}

TEST_CASE("read_csv error paths")
{
    CHECK_THROWS_AS(read_csv(""), std::runtime_error);
    CHECK_THROWS_AS(read_csv("a,b\n1,2\n"), std::runtime_error);
    CHECK_THROWS_AS(read_csv("t,x\n1,abc\n"), std::runtime_error);
    CHECK_THROWS_AS(read_csv("t,x\n1\n"), std::runtime_error);
}
