#include "cbw/image.hpp"
#include "cbw/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cbw;

namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Scenario single_stage()
{
    Scenario s;
    MziStage stage;
    stage.upper.freq_offset_hz = 1.0;
    s.chain.elements = {stage};
    s.t_end_s = 5.0;
    return s;
}
} // namespace

TEST_CASE("bar fringe: one cosine cycle across the row")
{
    const Scenario s = single_stage();
    // t = 0, so the stage phase difference is 0 and I_B starts at I_0.
    const FringeImage img = bar_fringe_image(s, "I_B", 0.0, 64, 8, 64.0);
    REQUIRE(img.width == 64);
    REQUIRE(img.height == 8);
    REQUIRE(img.pixels.size() == 64u * 8u);

    CHECK(img.pixels[0] == 65535);
    // half a spatial period later the fringe bottoms out
    CHECK(img.pixels[32] == 0);

    for (int y = 1; y < img.height; ++y)
    {
        for (int x = 0; x < img.width; ++x)
        {
            CHECK(img.pixels[static_cast<std::size_t>(y) * 64 + static_cast<std::size_t>(x)] ==
                  img.pixels[static_cast<std::size_t>(x)]);
        }
    }

    for (int x = 0; x < img.width; ++x)
    {
        const double expected = 0.5 * (1.0 + std::cos(kTwoPi * x / 64.0)) * 65535.0;
        CHECK(std::abs(static_cast<double>(img.pixels[static_cast<std::size_t>(x)]) - expected) <= 1.0);
    }
}

TEST_CASE("bar fringe: half a modulation period inverts the pattern")
{
    const Scenario s = single_stage();
    const FringeImage a = bar_fringe_image(s, "I_B", 0.2, 48, 4, 24.0);
    const FringeImage b = bar_fringe_image(s, "I_B", 0.7, 48, 4, 24.0); // +T/2 at 1 Hz
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
    {
        const int sum = static_cast<int>(a.pixels[i]) + static_cast<int>(b.pixels[i]);
        CHECK(std::abs(sum - 65535) <= 1);
    }
}

TEST_CASE("bar fringe argument checks")
{
    const Scenario s = single_stage();
    CHECK_THROWS_AS(bar_fringe_image(s, "I_B", 0.0, 8, 8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bar_fringe_image(s, "I_B", 0.0, 8, 8, -3.0), std::invalid_argument);
    CHECK_THROWS_AS(bar_fringe_image(s, "I_Q", 0.0, 8, 8, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(bar_fringe_image(s, "I_B", 0.0, 0, 8, 8.0), std::invalid_argument);
}

TEST_CASE("newton rings: zero curvature gives a uniform image")
{
    const Scenario s = preset("cbw");
    const FringeImage img = newton_ring_image(s, "I_C", 0.37, 33, 17, 0.0);
    for (const std::uint16_t px : img.pixels)
    {
        CHECK(px == img.pixels[0]);
    }
}

TEST_CASE("newton rings: ring count matches the radial phase range")
{
    const Scenario s = preset("cbw");
    // kappa chosen for kappa * R^2 = 6 * 2 pi at R = 60 px
    const double kappa = 6.0 * kTwoPi / (60.0 * 60.0);
    const FringeImage img = newton_ring_image(s, "I_D", 0.0, 121, 121, kappa);

    // walk outward from the center along +x and count dark-bright cycles
    const int cy = 60;
    const int cx = 60;
    int crossings = 0;
    bool above = false;
    for (int r = 0; r <= 60; ++r)
    {
        const std::uint16_t px = img.pixels[static_cast<std::size_t>(cy) * 121 +
                                            static_cast<std::size_t>(cx + r)];
        const bool now_above = px > 32767;
        if (r > 0 && now_above != above)
        {
            ++crossings;
        }
        above = now_above;
    }
    // 6 full cycles along the radius -> 12 half-level crossings
    CHECK(crossings == 12);
}

TEST_CASE("newton rings: paired outputs are complementary")
{
    const Scenario s = preset("cbw");
    const double kappa = 2e-3;
    const FringeImage c = newton_ring_image(s, "I_C", 1.234, 64, 64, kappa);
    const FringeImage d = newton_ring_image(s, "I_D", 1.234, 64, 64, kappa);
    for (std::size_t i = 0; i < c.pixels.size(); ++i)
    {
        const int sum = static_cast<int>(c.pixels[i]) + static_cast<int>(d.pixels[i]);
        CHECK(std::abs(sum - 65535) <= 1);
    }
}

TEST_CASE("newton rings: square images are invariant under 90 degree rotation")
{
    const Scenario s = preset("cbw");
    const int n = 41;
    const FringeImage img = newton_ring_image(s, "I_C", 0.8, n, n, 3e-3);
    for (int y = 0; y < n; ++y)
    {
        for (int x = 0; x < n; ++x)
        {
            const std::uint16_t original =
                img.pixels[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(x)];
            const std::uint16_t rotated =
                img.pixels[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(n - 1 - y)];
            CHECK(original == rotated);
        }
    }
}

TEST_CASE("newton rings argument checks")
{
    CHECK_THROWS_AS(newton_ring_image(preset("cbw"), "I_C", 0.0, 8, 8, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(newton_ring_image(single_stage(), "I_C", 0.0, 8, 8, 1e-3), std::invalid_argument);
}

TEST_CASE("pgm encoding is byte-exact")
{
    FringeImage tiny;
    tiny.width = 1;
    tiny.height = 1;
    tiny.pixels = {0};
    const auto bytes = pgm_encode(tiny);
    const std::string header = "P5\n1 1\n65535\n";
    REQUIRE(bytes.size() == header.size() + 2);
    CHECK(std::equal(header.begin(), header.end(), bytes.begin()));
    CHECK(bytes[bytes.size() - 2] == 0x00);
    CHECK(bytes[bytes.size() - 1] == 0x00);

    FringeImage two;
    two.width = 2;
    two.height = 1;
    two.pixels = {65535, 0};
    const auto b2 = pgm_encode(two);
    const std::string h2 = "P5\n2 1\n65535\n";
    REQUIRE(b2.size() == h2.size() + 4);
    CHECK(b2[h2.size() + 0] == 0xFF);
    CHECK(b2[h2.size() + 1] == 0xFF);
    CHECK(b2[h2.size() + 2] == 0x00);
    CHECK(b2[h2.size() + 3] == 0x00);

    CHECK(pgm_encode(two) == b2);

    FringeImage broken;
    broken.width = 2;
    broken.height = 2;
    broken.pixels = {1, 2, 3};
    CHECK_THROWS_AS(pgm_encode(broken), std::invalid_argument);
}

TEST_CASE("ring pixels never exceed the mapped input intensity")
{
    const FringeImage img = newton_ring_image(preset("cbw"), "I_C", 0.41, 40, 40, 4e-3);
    for (const std::uint16_t px : img.pixels)
    {
        CHECK(px <= 65535);
    }
}
