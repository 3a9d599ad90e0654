#ifndef CBW_PRESETS_HPP
#define CBW_PRESETS_HPP

#include "cbw/timesim.hpp"

#include <optional>
#include <string>

namespace cbw
{

// Named demonstration scenarios, 12 s at 1 kHz over a single two-stage block
// with +1/-1 Hz upper-arm offsets unless stated otherwise:
//   cbw     frequency-doubled moving fringe
//   usckd   both offsets equal, frozen outputs
//   fig3a   cbw + coupling upper path blocked on t in [4, 8)
//   fig3b   cbw + stage-1 lower arm blocked on [3, 5), stage-2 lower on [7, 9)
//   fig3c   cbw + stage-2 upper offset flipped to +df on [4, 8)
//   cascade canonical_cascade(n, df); n required
// df_hz scales the arm offsets (default 1 Hz).
Scenario preset(const std::string& name, std::optional<int> n = std::nullopt,
                std::optional<double> df_hz = std::nullopt);

} // namespace cbw

#endif // CBW_PRESETS_HPP
