#include "cbw/chain.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cbw
{
namespace
{

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i > 0)
        {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::string format_value(double v)
{
    std::ostringstream oss;
    oss << v;
    return oss.str();
}

void check_transmission(std::vector<std::string>& errors, const std::string& label, double t)
{
    if (!(t >= 0.0 && t <= 1.0))
    {
        errors.push_back(label + ": transmission " + format_value(t) + " out of range [0,1]");
    }
}

void check_finite(std::vector<std::string>& errors, const std::string& label, double v, const char* what)
{
    if (!std::isfinite(v))
    {
        errors.push_back(label + ": " + what + " is not finite");
    }
}

// Stage transfer with the arm transmissions applied between the two beam
// splitters, co-located with the stage phase difference.
Matrix2 stage_matrix(const MziStage& s, double dphi)
{
    const Matrix2 inner =
        matmul(attenuation_matrix(s.upper.transmission, s.lower.transmission), phase_matrix(dphi));
    return matmul(bs_matrix(), matmul(inner, bs_matrix()));
}

Matrix2 section_matrix(const CouplingSection& cs)
{
    return matmul(coupling_matrix(cs.psi_rad),
                  attenuation_matrix(cs.upper_transmission, cs.lower_transmission));
}

double stage_phase(const PhaseAssignment& phases, std::size_t stage_index)
{
    const auto it = phases.find(stage_index);
    if (it == phases.end())
    {
        throw std::invalid_argument("missing phase entry for stage " + std::to_string(stage_index + 1));
    }
    if (!std::isfinite(it->second))
    {
        throw std::invalid_argument("phase for stage " + std::to_string(stage_index + 1) +
                                    " is not finite");
    }
    return it->second;
}

void require_valid(const Chain& c, const PhaseAssignment& phases)
{
    const auto errors = validate_chain(c);
    if (!errors.empty())
    {
        throw std::invalid_argument("invalid chain: " + join(errors, "; "));
    }
    if (phases.size() != c.stage_count())
    {
        throw std::invalid_argument("phase assignment must carry exactly one entry per stage (" +
                                    std::to_string(phases.size()) + " given, " +
                                    std::to_string(c.stage_count()) + " stages)");
    }
}

struct ParsedPath
{
    bool is_stage = false;
    std::size_t index = 0; // 0-based
    int side = -1;          // -1 none, 0 upper, 1 lower
};

std::optional<ParsedPath> parse_path(const std::string& path)
{
    std::string head = path;
    std::string suffix;
    if (const auto dot = path.find('.'); dot != std::string::npos)
    {
        head = path.substr(0, dot);
        suffix = path.substr(dot + 1);
    }

    ParsedPath out;
    std::size_t digits_at = 0;
    if (head.rfind("stage", 0) == 0)
    {
        out.is_stage = true;
        digits_at = 5;
    }
    else if (head.rfind("coupling", 0) == 0)
    {
        out.is_stage = false;
        digits_at = 8;
    }
    else
    {
        return std::nullopt;
    }

    const std::string digits = head.substr(digits_at);
    if (digits.empty())
    {
        return std::nullopt;
    }
    std::size_t one_based = 0;
    for (char ch : digits)
    {
        if (ch < '0' || ch > '9')
        {
            return std::nullopt;
        }
        one_based = one_based * 10 + static_cast<std::size_t>(ch - '0');
        if (one_based > 1000000)
        {
            return std::nullopt;
        }
    }
    if (one_based == 0)
    {
        return std::nullopt;
    }
    out.index = one_based - 1;

    if (suffix == "upper")
    {
        out.side = 0;
    }
    else if (suffix == "lower")
    {
        out.side = 1;
    }
    else if (!suffix.empty())
    {
        return std::nullopt;
    }
    return out;
}

} // namespace

std::size_t Chain::stage_count() const
{
    std::size_t n = 0;
    for (const auto& e : elements)
    {
        n += std::holds_alternative<MziStage>(e) ? 1 : 0;
    }
    return n;
}

std::size_t Chain::coupling_count() const
{
    return elements.size() - stage_count();
}

std::string to_string(PathField f)
{
    switch (f)
    {
    case PathField::transmission:
        return "transmission";
    case PathField::psi:
        return "psi";
    case PathField::freq_offset:
        return "freq_offset";
    case PathField::initial_phase:
        return "initial_phase";
    }
    return "?";
}

PathField path_field_from_string(const std::string& s)
{
    if (s == "transmission")
    {
        return PathField::transmission;
    }
    if (s == "psi")
    {
        return PathField::psi;
    }
    if (s == "freq_offset")
    {
        return PathField::freq_offset;
    }
    if (s == "initial_phase")
    {
        return PathField::initial_phase;
    }
    throw std::invalid_argument("unknown field '" + s +
                                "' (expected transmission|psi|freq_offset|initial_phase)");
}

ResolvedPath resolve_path(const Chain& c, const std::string& path, PathField field)
{
    const auto parsed = parse_path(path);
    if (!parsed)
    {
        throw std::invalid_argument("unresolved path '" + path + "'");
    }

    ResolvedPath out;
    out.index = parsed->index;
    out.upper = parsed->side == 0;

    if (parsed->is_stage)
    {
        if (parsed->index >= c.stage_count())
        {
            throw std::invalid_argument("path '" + path + "' addresses a stage beyond the chain");
        }
        if (parsed->side < 0)
        {
            throw std::invalid_argument("path '" + path + "' must name an arm (.upper or .lower)");
        }
        if (field == PathField::psi)
        {
            throw std::invalid_argument("field psi applies to coupling sections, not '" + path + "'");
        }
        out.kind = ResolvedPath::Kind::stage_arm;
        return out;
    }

    if (parsed->index >= c.coupling_count())
    {
        throw std::invalid_argument("path '" + path + "' addresses a coupling beyond the chain");
    }
    switch (field)
    {
    case PathField::psi:
        if (parsed->side >= 0)
        {
            throw std::invalid_argument("field psi addresses the coupling section itself; use '" +
                                        path.substr(0, path.find('.')) + "'");
        }
        out.kind = ResolvedPath::Kind::coupling_section;
        return out;
    case PathField::transmission:
        if (parsed->side < 0)
        {
            throw std::invalid_argument("path '" + path + "' must name a coupling path (.upper or .lower)");
        }
        out.kind = ResolvedPath::Kind::coupling_path;
        return out;
    case PathField::freq_offset:
    case PathField::initial_phase:
        throw std::invalid_argument("field " + to_string(field) + " applies to stage arms, not '" +
                                    path + "'");
    }
    throw std::invalid_argument("unresolved path '" + path + "'");
}

std::vector<std::string> validate_chain(const Chain& c)
{
    std::vector<std::string> errors;
    if (c.elements.empty())
    {
        errors.push_back("chain: empty (needs at least one MZI stage)");
        return errors;
    }

    for (std::size_t i = 0; i < c.elements.size(); ++i)
    {
        const bool want_stage = (i % 2 == 0);
        const bool is_stage = std::holds_alternative<MziStage>(c.elements[i]);
        if (is_stage != want_stage)
        {
            errors.push_back("elements[" + std::to_string(i) + "]: alternation violated (expected " +
                             (want_stage ? "an MZI stage" : "a coupling section") + ")");
        }
    }
    if (c.elements.size() % 2 == 0)
    {
        errors.push_back("elements[" + std::to_string(c.elements.size() - 1) +
                         "]: alternation violated (chain must end with an MZI stage)");
    }

    std::size_t stage_idx = 0;
    std::size_t coupling_idx = 0;
    for (const auto& elem : c.elements)
    {
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            const std::string base = "stage" + std::to_string(stage_idx + 1);
            for (int side = 0; side < 2; ++side)
            {
                const ArmSpec& arm = side == 0 ? stage->upper : stage->lower;
                const std::string label = base + (side == 0 ? ".upper" : ".lower");
                check_transmission(errors, label, arm.transmission);
                check_finite(errors, label, arm.freq_offset_hz, "freq_offset_hz");
                check_finite(errors, label, arm.initial_phase_rad, "initial_phase_rad");
            }
            ++stage_idx;
        }
        else
        {
            const auto& cs = std::get<CouplingSection>(elem);
            const std::string base = "coupling" + std::to_string(coupling_idx + 1);
            check_finite(errors, base, cs.psi_rad, "psi_rad");
            check_transmission(errors, base + ".upper", cs.upper_transmission);
            check_transmission(errors, base + ".lower", cs.lower_transmission);
            ++coupling_idx;
        }
    }
    return errors;
}

Matrix2 chain_matrix(const Chain& c, const PhaseAssignment& phases)
{
    require_valid(c, phases);
    Matrix2 acc = Matrix2::identity();
    std::size_t stage_idx = 0;
    for (const auto& elem : c.elements)
    {
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            acc = matmul(stage_matrix(*stage, stage_phase(phases, stage_idx)), acc);
            ++stage_idx;
        }
        else
        {
            acc = matmul(section_matrix(std::get<CouplingSection>(elem)), acc);
        }
    }
    return acc;
}

std::vector<Matrix2> monitor_matrices(const Chain& c, const PhaseAssignment& phases)
{
    require_valid(c, phases);
    std::vector<Matrix2> prefixes;
    prefixes.reserve(c.elements.size());
    Matrix2 acc = Matrix2::identity();
    std::size_t stage_idx = 0;
    for (const auto& elem : c.elements)
    {
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            acc = matmul(stage_matrix(*stage, stage_phase(phases, stage_idx)), acc);
            ++stage_idx;
        }
        else
        {
            acc = matmul(section_matrix(std::get<CouplingSection>(elem)), acc);
        }
        prefixes.push_back(acc);
    }
    return prefixes;
}

FieldPair path_sum_oracle(const Chain& c, const PhaseAssignment& phases, const FieldPair& input)
{
    require_valid(c, phases);
    if (c.elements.size() > 12)
    {
        throw std::length_error("path_sum_oracle: chain too deep (" +
                                std::to_string(c.elements.size()) + " elements, limit 12)");
    }

    // Per-element port couplings written out by hand; deliberately not built
    // from the matrix composition this oracle cross-checks.
    using Entries = std::array<std::array<Complex, 2>, 2>; // [out port][in port]
    std::vector<Entries> couplings;
    couplings.reserve(c.elements.size());
    std::size_t stage_idx = 0;
    for (const auto& elem : c.elements)
    {
        Entries e{};
        if (const auto* stage = std::get_if<MziStage>(&elem))
        {
            const double dphi = stage_phase(phases, stage_idx++);
            const Complex a{stage->upper.transmission, 0.0};
            const Complex b = std::polar(stage->lower.transmission, dphi);
            const Complex half_diff = 0.5 * (a - b);
            const Complex half_sum_i = Complex{0.0, 0.5} * (a + b);
            e[0][0] = half_diff;
            e[0][1] = half_sum_i;
            e[1][0] = half_sum_i;
            e[1][1] = -half_diff;
        }
        else
        {
            const auto& cs = std::get<CouplingSection>(elem);
            e[0][0] = Complex{cs.upper_transmission, 0.0};
            e[1][1] = std::polar(cs.lower_transmission, cs.psi_rad);
        }
        couplings.push_back(e);
    }

    std::array<Complex, 2> out{Complex{}, Complex{}};
    const std::array<Complex, 2> in{input.upper, input.lower};

    // Depth-first walk over every port sequence through the chain.
    struct Frame
    {
        std::size_t element;
        int port;
        Complex amplitude;
    };
    std::vector<Frame> stack;
    for (int p0 = 0; p0 < 2; ++p0)
    {
        stack.push_back({0, p0, in[static_cast<std::size_t>(p0)]});
    }
    while (!stack.empty())
    {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.element == couplings.size())
        {
            out[static_cast<std::size_t>(f.port)] += f.amplitude;
            continue;
        }
        const Entries& e = couplings[f.element];
        for (int q = 0; q < 2; ++q)
        {
            stack.push_back({f.element + 1, q,
                             f.amplitude * e[static_cast<std::size_t>(q)][static_cast<std::size_t>(f.port)]});
        }
    }
    return {out[0], out[1]};
}

Chain canonical_cascade(std::size_t n_blocks, double delta_f_hz)
{
    if (n_blocks < 1)
    {
        throw std::invalid_argument("canonical_cascade: n must be >= 1");
    }
    if (!std::isfinite(delta_f_hz))
    {
        throw std::invalid_argument("canonical_cascade: delta_f_hz must be finite");
    }
    Chain c;
    c.elements.reserve(4 * n_blocks - 1);
    for (std::size_t k = 0; k < 2 * n_blocks; ++k)
    {
        if (k > 0)
        {
            c.elements.emplace_back(CouplingSection{});
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        MziStage stage;
        stage.upper.freq_offset_hz = sign * delta_f_hz;
        c.elements.emplace_back(stage);
    }
    return c;
}

Chain set_path(const Chain& c, const std::string& path, PathField field, double value)
{
    const ResolvedPath where = resolve_path(c, path, field);

    if (field == PathField::transmission)
    {
        if (!(value >= 0.0 && value <= 1.0))
        {
            throw std::invalid_argument("set_path: transmission " + format_value(value) +
                                        " out of range [0,1]");
        }
    }
    else if (!std::isfinite(value))
    {
        throw std::invalid_argument("set_path: " + to_string(field) + " must be finite");
    }

    Chain out = c;
    std::size_t stage_idx = 0;
    std::size_t coupling_idx = 0;
    for (auto& elem : out.elements)
    {
        if (auto* stage = std::get_if<MziStage>(&elem))
        {
            if (where.kind == ResolvedPath::Kind::stage_arm && stage_idx == where.index)
            {
                ArmSpec& arm = where.upper ? stage->upper : stage->lower;
                switch (field)
                {
                case PathField::transmission:
                    arm.transmission = value;
                    break;
                case PathField::freq_offset:
                    arm.freq_offset_hz = value;
                    break;
                case PathField::initial_phase:
                    arm.initial_phase_rad = value;
                    break;
                case PathField::psi:
                    break; // unreachable, resolve_path rejects
                }
                return out;
            }
            ++stage_idx;
        }
        else
        {
            auto& cs = std::get<CouplingSection>(elem);
            const bool hit = coupling_idx == where.index;
            if (hit && where.kind == ResolvedPath::Kind::coupling_section)
            {
                cs.psi_rad = value;
                return out;
            }
            if (hit && where.kind == ResolvedPath::Kind::coupling_path)
            {
                (where.upper ? cs.upper_transmission : cs.lower_transmission) = value;
                return out;
            }
            ++coupling_idx;
        }
    }
    throw std::invalid_argument("unresolved path '" + path + "'");
}

} // namespace cbw
