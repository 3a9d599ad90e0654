#ifndef CBW_IMAGE_HPP
#define CBW_IMAGE_HPP

#include "cbw/timesim.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cbw
{

// 16-bit grayscale intensity map, row-major, top row first.
struct FringeImage
{
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;
    std::string channel;
    double sample_time_s = 0.0;
};

// Evaluates the chain at time t with a spatial phase 2*pi*x/period added to
// the first stage's upper arm per pixel column, then maps the channel
// intensity linearly from [0, I_0] onto [0, 65535] (round half up).
FringeImage bar_fringe_image(const Scenario& s, const std::string& channel, double t_s, int width,
                             int height, double spatial_period_px);

// Same mapping with a quadratic radial phase kappa*r^2 (r measured from the
// image center) added to the second stage's upper arm, which produces
// concentric rings.
FringeImage newton_ring_image(const Scenario& s, const std::string& channel, double t_s, int width,
                              int height, double curvature_rad_per_px2);

// Binary PGM: "P5\n<width> <height>\n65535\n" followed by width*height
// 16-bit big-endian samples. Byte-exact and deterministic.
std::vector<std::uint8_t> pgm_encode(const FringeImage& img);

} // namespace cbw

#endif // CBW_IMAGE_HPP
