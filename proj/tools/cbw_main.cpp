#include "cbw/analysis.hpp"
#include "cbw/image.hpp"
#include "cbw/presets.hpp"
#include "cbw/scenario_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
    {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data)
{
    write_file(path, std::string(data.begin(), data.end()));
}

struct SourceOptions
{
    std::string scenario_file;
    std::string preset_name;
    int cascade_n = 0;
    double df_hz = 1.0;
    bool has_n = false;
    bool has_df = false;
};

void add_source_options(CLI::App& cmd, SourceOptions& src)
{
    cmd.add_option("--scenario", src.scenario_file, "Scenario JSON file");
    cmd.add_option("--preset", src.preset_name,
                   "Named scenario: cbw|usckd|fig3a|fig3b|fig3c|cascade");
    cmd.add_option("--n", src.cascade_n, "Block count for --preset cascade")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--df", src.df_hz, "Arm frequency offset in Hz (presets; default 1)");
}

cbw::Scenario load_scenario(const CLI::App& cmd, const SourceOptions& src)
{
    const bool have_file = cmd.count("--scenario") > 0;
    const bool have_preset = cmd.count("--preset") > 0;
    if (have_file == have_preset)
    {
        throw UsageError("exactly one of --scenario or --preset is required");
    }
    if (have_preset)
    {
        std::optional<int> n;
        if (cmd.count("--n") > 0)
        {
            n = src.cascade_n;
        }
        std::optional<double> df;
        if (cmd.count("--df") > 0)
        {
            df = src.df_hz;
        }
        try
        {
            return cbw::preset(src.preset_name, n, df);
        }
        catch (const std::invalid_argument& e)
        {
            throw UsageError(e.what());
        }
    }
    const std::string text = read_file(src.scenario_file);
    cbw::ParseResult parsed = cbw::parse_scenario(text);
    if (!parsed.scenario)
    {
        std::string message = "invalid scenario '" + src.scenario_file + "':";
        for (const auto& err : parsed.errors)
        {
            message += "\n  " + err;
        }
        throw std::runtime_error(message);
    }
    return *parsed.scenario;
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int run_simulate(const CLI::App& cmd, const SourceOptions& src, const std::string& out_path)
{
    const cbw::Scenario scenario = load_scenario(cmd, src);
    for (const auto& [time, description] : cbw::event_timeline(scenario))
    {
        std::fprintf(stderr, "t=%.3f s: %s\n", time, description.c_str());
    }
    const cbw::TimeSeries series = cbw::simulate(scenario);
    write_file(out_path, cbw::to_csv(series));
    return kExitOk;
}

int run_analyze(const std::string& in_path, const std::string& channel,
                std::optional<double> component_hz)
{
    const cbw::TimeSeries series = cbw::read_csv(read_file(in_path));
    if (series.channels.find(channel) == series.channels.end())
    {
        throw std::runtime_error("channel '" + channel + "' not present in '" + in_path + "'");
    }

    try
    {
        const cbw::PeriodEstimate est = cbw::estimate_period(series, channel);
        std::printf("period_s=%s\n", format_number(est.period_s).c_str());
        std::printf("period_uncertainty_s=%s\n", format_number(est.uncertainty_s).c_str());
        std::printf("period_crossings=%d\n", est.crossings_used);
    }
    catch (const cbw::NoModulationError&)
    {
        std::printf("period_s=none (no modulation)\n");
    }
    catch (const cbw::WindowTooShortError&)
    {
        std::printf("period_s=none (window too short)\n");
    }

    try
    {
        std::printf("visibility=%s\n", format_number(cbw::visibility(series, channel)).c_str());
    }
    catch (const cbw::UndefinedVisibilityError&)
    {
        std::printf("visibility=none (undefined)\n");
    }

    if (component_hz)
    {
        std::printf("component_f_hz=%s\n", format_number(*component_hz).c_str());
        try
        {
            std::printf("component_amplitude=%s\n",
                        format_number(cbw::frequency_component(series, channel, *component_hz)).c_str());
        }
        catch (const cbw::WindowTooShortError&)
        {
            std::printf("component_amplitude=none (window too short)\n");
        }
    }
    return kExitOk;
}

int run_image(const CLI::App& cmd, const SourceOptions& src, const std::string& mode,
              const std::string& channel, double t_s, const std::string& size,
              std::optional<double> period_px, std::optional<double> kappa,
              const std::string& out_path)
{
    int width = 0;
    int height = 0;
    {
        char extra = '\0';
        if (std::sscanf(size.c_str(), "%dx%d%c", &width, &height, &extra) != 2 || width <= 0 ||
            height <= 0)
        {
            throw UsageError("--size must look like 256x256");
        }
    }

    const cbw::Scenario scenario = load_scenario(cmd, src);
    cbw::FringeImage img;
    if (mode == "bar")
    {
        if (!period_px)
        {
            throw UsageError("--mode bar requires --period-px");
        }
        img = cbw::bar_fringe_image(scenario, channel, t_s, width, height, *period_px);
    }
    else if (mode == "rings")
    {
        if (!kappa)
        {
            throw UsageError("--mode rings requires --kappa");
        }
        img = cbw::newton_ring_image(scenario, channel, t_s, width, height, *kappa);
    }
    else
    {
        throw UsageError("--mode must be bar or rings");
    }

    const auto bytes = cbw::pgm_encode(img);
    write_file(out_path, bytes);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cbwsim: transfer-matrix simulation of coupled Mach-Zehnder interferometer chains"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a scenario and write detector intensities as CSV "
                                               "(columns t,I_A,I_B,I_C,I_D; event log on stderr)");
    SourceOptions sim_src;
    add_source_options(*sim, sim_src);
    std::string sim_out;
    sim->add_option("--out", sim_out, "Output CSV file")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "Estimate modulation period, visibility and optional "
                                              "single-frequency amplitude from a CSV column");
    std::string ana_in;
    std::string ana_channel;
    double ana_component = 0.0;
    ana->add_option("--in", ana_in, "Input CSV file")->required();
    ana->add_option("--channel", ana_channel, "Column name, e.g. I_D")->required();
    auto* ana_component_opt =
        ana->add_option("--component", ana_component, "Also report the amplitude at this frequency (Hz)");

    // image
    auto* img = app.add_subcommand("image", "Render a fringe image to binary 16-bit PGM "
                                            "(P5, maxval 65535, big-endian)");
    SourceOptions img_src;
    add_source_options(*img, img_src);
    std::string img_mode;
    std::string img_channel;
    double img_t = 0.0;
    std::string img_size;
    double img_period_px = 0.0;
    double img_kappa = 0.0;
    std::string img_out;
    img->add_option("--mode", img_mode, "bar (spatial phase across x) or rings (radial phase)")
        ->required();
    img->add_option("--channel", img_channel, "Detector channel: I_A|I_B|I_C|I_D")->required();
    img->add_option("--t", img_t, "Sample time in seconds")->required();
    img->add_option("--size", img_size, "Image size as WxH, e.g. 256x256")->required();
    auto* img_period_opt =
        img->add_option("--period-px", img_period_px, "Bar fringe spatial period in pixels");
    auto* img_kappa_opt =
        img->add_option("--kappa", img_kappa, "Ring curvature in rad per pixel^2 (>= 0)");
    img->add_option("--out", img_out, "Output PGM file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (sim->parsed())
        {
            return run_simulate(*sim, sim_src, sim_out);
        }
        if (ana->parsed())
        {
            std::optional<double> component;
            if (ana_component_opt->count() > 0)
            {
                component = ana_component;
            }
            return run_analyze(ana_in, ana_channel, component);
        }
        if (img->parsed())
        {
            std::optional<double> period;
            if (img_period_opt->count() > 0)
            {
                period = img_period_px;
            }
            std::optional<double> kappa;
            if (img_kappa_opt->count() > 0)
            {
                kappa = img_kappa;
            }
            return run_image(*img, img_src, img_mode, img_channel, img_t, img_size, period, kappa,
                             img_out);
        }
    }
    catch (const UsageError& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
