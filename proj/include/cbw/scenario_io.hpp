#ifndef CBW_SCENARIO_IO_HPP
#define CBW_SCENARIO_IO_HPP

#include "cbw/timesim.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cbw
{

struct ParseResult
{
    std::optional<Scenario> scenario; // set iff errors is empty
    std::vector<std::string> errors;  // every syntax/semantic problem, with document paths
};

// Parses the JSON scenario document. Never returns a partial scenario: on
// any problem the full error list comes back instead.
ParseResult parse_scenario(const std::string& json_text);

std::string serialize_scenario(const Scenario& s);

// "t,I_A,I_B,I_C,I_D" header plus one row per sample, scientific notation
// with 9 significant digits, '\n' line ends, no trailing delimiter.
std::string to_csv(const TimeSeries& ts);

// Reads a CSV produced by to_csv (first column must be t). Throws
// std::runtime_error on malformed input.
TimeSeries read_csv(const std::string& text);

} // namespace cbw

#endif // CBW_SCENARIO_IO_HPP
