#include "cbw/scenario_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace cbw
{
namespace
{

using nlohmann::json;

struct ErrorSink
{
    std::vector<std::string> errors;

    void add(const std::string& path, const std::string& message)
    {
        errors.push_back(path + ": " + message);
    }
};

std::string num(double v)
{
    json j = v;
    return j.dump();
}

void check_known_keys(const json& obj, const std::string& path, const std::set<std::string>& known,
                      ErrorSink& sink)
{
    for (const auto& [key, value] : obj.items())
    {
        (void)value;
        if (known.find(key) == known.end())
        {
            sink.add(path.empty() ? "document" : path, "unknown key '" + key + "'");
        }
    }
}

double read_number(const json& obj, const std::string& path, const std::string& key, double fallback,
                   ErrorSink& sink)
{
    if (!obj.contains(key))
    {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number())
    {
        sink.add(path + key, "expected a number");
        return fallback;
    }
    return v.get<double>();
}

double read_unit_interval(const json& obj, const std::string& path, const std::string& key,
                          double fallback, ErrorSink& sink)
{
    const double v = read_number(obj, path, key, fallback, sink);
    if (!(v >= 0.0 && v <= 1.0))
    {
        sink.add(path + key, num(v) + " out of [0,1]");
        return fallback;
    }
    return v;
}

ArmSpec parse_arm(const json& obj, const std::string& path, ErrorSink& sink)
{
    ArmSpec arm;
    if (!obj.is_object())
    {
        sink.add(path, "expected an object with df_hz/phi0_rad/t");
        return arm;
    }
    check_known_keys(obj, path, {"df_hz", "phi0_rad", "t"}, sink);
    arm.freq_offset_hz = read_number(obj, path + ".", "df_hz", 0.0, sink);
    arm.initial_phase_rad = read_number(obj, path + ".", "phi0_rad", 0.0, sink);
    arm.transmission = read_unit_interval(obj, path + ".", "t", 1.0, sink);
    return arm;
}

} // namespace

ParseResult parse_scenario(const std::string& json_text)
{
    ParseResult result;
    ErrorSink sink;

    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        result.errors.push_back(std::string("document: ") + e.what());
        return result;
    }
    if (!doc.is_object())
    {
        result.errors.push_back("document: top level must be an object");
        return result;
    }

    check_known_keys(doc, "",
                     {"wavelength_nm", "input_intensity", "sample_rate_hz", "t_start_s", "t_end_s",
                      "chain", "events"},
                     sink);

    Scenario s;
    s.wavelength_nm = read_number(doc, "", "wavelength_nm", 605.966, sink);
    s.input_intensity = read_number(doc, "", "input_intensity", 1.0, sink);
    s.sample_rate_hz = read_number(doc, "", "sample_rate_hz", 1000.0, sink);
    s.t_start_s = read_number(doc, "", "t_start_s", 0.0, sink);
    s.t_end_s = read_number(doc, "", "t_end_s", 12.0, sink);

    if (!doc.contains("chain") || !doc.at("chain").is_array())
    {
        sink.add("chain", "required array of mzi/coupling objects");
    }
    else
    {
        const json& chain = doc.at("chain");
        for (std::size_t i = 0; i < chain.size(); ++i)
        {
            const std::string path = "chain[" + std::to_string(i) + "]";
            const json& entry = chain.at(i);
            if (!entry.is_object() || entry.size() != 1)
            {
                sink.add(path, "expected exactly one of {\"mzi\": ...} or {\"coupling\": ...}");
                continue;
            }
            if (entry.contains("mzi"))
            {
                const json& mzi = entry.at("mzi");
                if (!mzi.is_object())
                {
                    sink.add(path + ".mzi", "expected an object");
                    continue;
                }
                check_known_keys(mzi, path + ".mzi", {"upper", "lower"}, sink);
                MziStage stage;
                if (mzi.contains("upper"))
                {
                    stage.upper = parse_arm(mzi.at("upper"), path + ".mzi.upper", sink);
                }
                if (mzi.contains("lower"))
                {
                    stage.lower = parse_arm(mzi.at("lower"), path + ".mzi.lower", sink);
                }
                s.chain.elements.emplace_back(stage);
            }
            else if (entry.contains("coupling"))
            {
                const json& coupling = entry.at("coupling");
                if (!coupling.is_object())
                {
                    sink.add(path + ".coupling", "expected an object");
                    continue;
                }
                check_known_keys(coupling, path + ".coupling", {"psi_rad", "t_upper", "t_lower"}, sink);
                CouplingSection cs;
                cs.psi_rad = read_number(coupling, path + ".coupling.", "psi_rad", 0.0, sink);
                cs.upper_transmission =
                    read_unit_interval(coupling, path + ".coupling.", "t_upper", 1.0, sink);
                cs.lower_transmission =
                    read_unit_interval(coupling, path + ".coupling.", "t_lower", 1.0, sink);
                s.chain.elements.emplace_back(cs);
            }
            else
            {
                sink.add(path, "expected an \"mzi\" or \"coupling\" object");
            }
        }
    }

    if (doc.contains("events"))
    {
        const json& events = doc.at("events");
        if (!events.is_array())
        {
            sink.add("events", "expected an array");
        }
        else
        {
            for (std::size_t i = 0; i < events.size(); ++i)
            {
                const std::string path = "events[" + std::to_string(i) + "]";
                const json& entry = events.at(i);
                if (!entry.is_object())
                {
                    sink.add(path, "expected an object");
                    continue;
                }
                check_known_keys(entry, path, {"t_s", "path", "field", "value"}, sink);
                Event ev;
                ev.time_s = read_number(entry, path + ".", "t_s", 0.0, sink);
                ev.value = read_number(entry, path + ".", "value", 0.0, sink);
                if (!entry.contains("path") || !entry.at("path").is_string())
                {
                    sink.add(path + ".path", "required string");
                }
                else
                {
                    ev.path = entry.at("path").get<std::string>();
                }
                if (!entry.contains("field") || !entry.at("field").is_string())
                {
                    sink.add(path + ".field", "required string");
                }
                else
                {
                    try
                    {
                        ev.field = path_field_from_string(entry.at("field").get<std::string>());
                    }
                    catch (const std::exception& e)
                    {
                        sink.add(path + ".field", e.what());
                    }
                }
                s.events.push_back(ev);
            }
        }
    }

    if (!sink.errors.empty())
    {
        result.errors = std::move(sink.errors);
        return result;
    }

    // Document-level shape was fine; re-check every model invariant.
    result.errors = validate_scenario(s);
    if (!result.errors.empty())
    {
        return result;
    }
    result.scenario = std::move(s);
    return result;
}

std::string serialize_scenario(const Scenario& s)
{
    json doc;
    doc["wavelength_nm"] = s.wavelength_nm;
    doc["input_intensity"] = s.input_intensity;
    doc["sample_rate_hz"] = s.sample_rate_hz;
    doc["t_start_s"] = s.t_start_s;
    doc["t_end_s"] = s.t_end_s;

    json chain = json::array();
    for (const auto& elem : s.chain.elements)
    {
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            json mzi;
            for (int side = 0; side < 2; ++side)
            {
                const ArmSpec& arm = side == 0 ? stage->upper : stage->lower;
                json a;
                a["df_hz"] = arm.freq_offset_hz;
                a["phi0_rad"] = arm.initial_phase_rad;
                a["t"] = arm.transmission;
                mzi[side == 0 ? "upper" : "lower"] = a;
            }
            chain.push_back(json{{"mzi", mzi}});
        }
        else
        {
            const auto& cs = std::get<CouplingSection>(elem);
            json c;
            c["psi_rad"] = cs.psi_rad;
            c["t_upper"] = cs.upper_transmission;
            c["t_lower"] = cs.lower_transmission;
            chain.push_back(json{{"coupling", c}});
        }
    }
    doc["chain"] = chain;

    json events = json::array();
    for (const Event& ev : s.events)
    {
        events.push_back(json{{"t_s", ev.time_s},
                              {"path", ev.path},
                              {"field", to_string(ev.field)},
                              {"value", ev.value}});
    }
    doc["events"] = events;

    return doc.dump(2) + "\n";
}

std::string to_csv(const TimeSeries& ts)
{
    static const char* kColumns[] = {"I_A", "I_B", "I_C", "I_D"};
    for (const char* name : kColumns)
    {
        if (ts.channels.find(name) == ts.channels.end())
        {
            throw std::invalid_argument(std::string("to_csv: channel ") + name + " missing");
        }
        if (ts.channels.at(name).size() != ts.times_s.size())
        {
            throw std::invalid_argument(std::string("to_csv: channel ") + name + " length mismatch");
        }
    }

    std::string out = "t,I_A,I_B,I_C,I_D\n";
    out.reserve(out.size() + ts.times_s.size() * 80);
    char buf[40];
    for (std::size_t i = 0; i < ts.times_s.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%.8e", ts.times_s[i]);
        out += buf;
        for (const char* name : kColumns)
        {
            std::snprintf(buf, sizeof buf, ",%.8e", ts.channels.at(name)[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

TimeSeries read_csv(const std::string& text)
{
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size())
    {
        const std::size_t eol = text.find('\n', pos);
        const std::size_t end = eol == std::string::npos ? text.size() : eol;
        if (end > pos)
        {
            lines.push_back(text.substr(pos, end - pos));
        }
        pos = end + 1;
    }
    if (lines.empty())
    {
        throw std::runtime_error("read_csv: empty input");
    }

    std::vector<std::string> header;
    {
        std::size_t start = 0;
        const std::string& h = lines[0];
        while (true)
        {
            const std::size_t comma = h.find(',', start);
            header.push_back(h.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos)
            {
                break;
            }
            start = comma + 1;
        }
    }
    if (header.empty() || header[0] != "t")
    {
        throw std::runtime_error("read_csv: first column must be t");
    }

    TimeSeries ts;
    for (std::size_t c = 1; c < header.size(); ++c)
    {
        ts.channels[header[c]] = {};
    }

    for (std::size_t li = 1; li < lines.size(); ++li)
    {
        const std::string& line = lines[li];
        std::vector<double> row;
        std::size_t start = 0;
        while (true)
        {
            const std::size_t comma = line.find(',', start);
            const std::string cell =
                line.substr(start, comma == std::string::npos ? comma : comma - start);
            char* endp = nullptr;
            const double v = std::strtod(cell.c_str(), &endp);
            if (endp == cell.c_str() || *endp != '\0')
            {
                throw std::runtime_error("read_csv: bad number '" + cell + "' on line " +
                                         std::to_string(li + 1));
            }
            row.push_back(v);
            if (comma == std::string::npos)
            {
                break;
            }
            start = comma + 1;
        }
        if (row.size() != header.size())
        {
            throw std::runtime_error("read_csv: column count mismatch on line " + std::to_string(li + 1));
        }
        ts.times_s.push_back(row[0]);
        for (std::size_t c = 1; c < header.size(); ++c)
        {
            ts.channels[header[c]].push_back(row[c]);
        }
    }
    return ts;
}

} // namespace cbw
