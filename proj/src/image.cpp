#include "cbw/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cbw
{
namespace
{

enum class Channel
{
    A,
    B,
    C,
    D
};

Channel channel_from_name(const std::string& name)
{
    if (name == "I_A")
    {
        return Channel::A;
    }
    if (name == "I_B")
    {
        return Channel::B;
    }
    if (name == "I_C")
    {
        return Channel::C;
    }
    if (name == "I_D")
    {
        return Channel::D;
    }
    throw std::invalid_argument("unknown channel '" + name + "' (expected I_A, I_B, I_C or I_D)");
}

double eval_channel(const Chain& chain, const PhaseAssignment& phases, const FieldPair& input,
                    Channel which)
{
    const auto prefixes = monitor_matrices(chain, phases);
    switch (which)
    {
    case Channel::A:
        return intensity(apply(prefixes.front(), input).upper);
    case Channel::B:
        return intensity(apply(prefixes.front(), input).lower);
    case Channel::C:
        return intensity(apply(prefixes.back(), input).upper);
    case Channel::D:
        return intensity(apply(prefixes.back(), input).lower);
    }
    return 0.0;
}

std::uint16_t quantize(double value, double i0)
{
    const double mapped = std::floor(value / i0 * 65535.0 + 0.5);
    const double clamped = std::clamp(mapped, 0.0, 65535.0);
    return static_cast<std::uint16_t>(clamped);
}

void check_geometry(int width, int height, double t_s)
{
    if (width <= 0 || height <= 0)
    {
        throw std::invalid_argument("image size must be positive");
    }
    if (!std::isfinite(t_s) || t_s < 0.0)
    {
        throw std::invalid_argument("sample time must be >= 0");
    }
}

} // namespace

FringeImage bar_fringe_image(const Scenario& s, const std::string& channel, double t_s, int width,
                             int height, double spatial_period_px)
{
    check_geometry(width, height, t_s);
    if (!(spatial_period_px > 0.0) || !std::isfinite(spatial_period_px))
    {
        throw std::invalid_argument("spatial period must be positive");
    }
    const Channel which = channel_from_name(channel);

    const ScenarioTimeline timeline(s);
    const Chain chain = timeline.chain_at(t_s);
    const PhaseAssignment base = timeline.phases_at(t_s);
    const FieldPair input{Complex{std::sqrt(s.input_intensity), 0.0}, Complex{}};

    std::vector<std::uint16_t> row(static_cast<std::size_t>(width));
    for (int x = 0; x < width; ++x)
    {
        PhaseAssignment phases = base;
        phases[0] += 2.0 * std::numbers::pi * static_cast<double>(x) / spatial_period_px;
        row[static_cast<std::size_t>(x)] =
            quantize(eval_channel(chain, phases, input, which), s.input_intensity);
    }

    FringeImage img;
    img.width = width;
    img.height = height;
    img.channel = channel;
    img.sample_time_s = t_s;
    img.pixels.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
    {
        img.pixels.insert(img.pixels.end(), row.begin(), row.end());
    }
    return img;
}

FringeImage newton_ring_image(const Scenario& s, const std::string& channel, double t_s, int width,
                              int height, double curvature_rad_per_px2)
{
    check_geometry(width, height, t_s);
    if (curvature_rad_per_px2 < 0.0 || !std::isfinite(curvature_rad_per_px2))
    {
        throw std::invalid_argument("curvature must be >= 0");
    }
    const Channel which = channel_from_name(channel);

    const ScenarioTimeline timeline(s);
    const Chain chain = timeline.chain_at(t_s);
    if (chain.stage_count() < 2)
    {
        throw std::invalid_argument("newton_ring_image: chain needs a second stage for the lens phase");
    }
    const PhaseAssignment base = timeline.phases_at(t_s);
    const FieldPair input{Complex{std::sqrt(s.input_intensity), 0.0}, Complex{}};

    const double cx = (static_cast<double>(width) - 1.0) / 2.0;
    const double cy = (static_cast<double>(height) - 1.0) / 2.0;

    FringeImage img;
    img.width = width;
    img.height = height;
    img.channel = channel;
    img.sample_time_s = t_s;
    img.pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
    {
        for (int x = 0; x < width; ++x)
        {
            const double dx = static_cast<double>(x) - cx;
            const double dy = static_cast<double>(y) - cy;
            const double r2 = dx * dx + dy * dy;
            PhaseAssignment phases = base;
            phases[1] += curvature_rad_per_px2 * r2;
            img.pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(x)] =
                quantize(eval_channel(chain, phases, input, which), s.input_intensity);
        }
    }
    return img;
}

std::vector<std::uint8_t> pgm_encode(const FringeImage& img)
{
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() !=
            static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height))
    {
        throw std::invalid_argument("pgm_encode: inconsistent image dimensions");
    }
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n65535\n";

    std::vector<std::uint8_t> out;
    out.reserve(header.size() + 2 * img.pixels.size());
    out.insert(out.end(), header.begin(), header.end());
    for (const std::uint16_t px : img.pixels)
    {
        out.push_back(static_cast<std::uint8_t>(px >> 8));
        out.push_back(static_cast<std::uint8_t>(px & 0xFF));
    }
    return out;
}

} // namespace cbw
