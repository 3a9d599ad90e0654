#ifndef CBW_CHAIN_HPP
#define CBW_CHAIN_HPP

#include "cbw/optics.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cbw
{

// One interferometer arm: drive-frequency offset against the reference arm,
// the synchronized initial phase, and an amplitude transmission (1 = clear,
// 0 = blocked, in between = lossy element such as a weak modulator).
struct ArmSpec
{
    double freq_offset_hz = 0.0;
    double initial_phase_rad = 0.0;
    double transmission = 1.0;
};

struct MziStage
{
    ArmSpec upper;
    ArmSpec lower;
};

// Two-path section between consecutive stages. Carries the coupling phase
// psi on its lower path plus independent path transmissions.
struct CouplingSection
{
    double psi_rad = 0.0;
    double upper_transmission = 1.0;
    double lower_transmission = 1.0;
};

using ChainElement = std::variant<MziStage, CouplingSection>;

// Serial two-port chain: stages alternating with coupling sections, starting
// and ending with a stage.
struct Chain
{
    std::vector<ChainElement> elements;

    std::size_t stage_count() const;
    std::size_t coupling_count() const;
    // Number of two-stage blocks; meaningful when stage_count() is even.
    std::size_t block_count() const { return stage_count() / 2; }
};

// Instantaneous phase difference (upper arm minus lower arm, radians) keyed
// by stage index. Must carry exactly one entry per stage.
using PhaseAssignment = std::map<std::size_t, double>;

enum class PathField
{
    transmission,
    psi,
    freq_offset,
    initial_phase
};

std::string to_string(PathField f);
PathField path_field_from_string(const std::string& s);

// Address inside a chain, parsed from strings like "stage1.upper",
// "coupling2.lower" or "coupling1" (1-based indices).
struct ResolvedPath
{
    enum class Kind
    {
        stage_arm,
        coupling_path,
        coupling_section
    };
    Kind kind = Kind::stage_arm;
    std::size_t index = 0; // stage or coupling index, 0-based
    bool upper = true;
};

// Throws std::invalid_argument when the path does not resolve or the field
// cannot be applied at that address.
ResolvedPath resolve_path(const Chain& c, const std::string& path, PathField field);

// Empty result means the chain satisfies all structural invariants;
// otherwise every violation is listed.
std::vector<std::string> validate_chain(const Chain& c);

// Ordered product of all element matrices (first element applied first).
Matrix2 chain_matrix(const Chain& c, const PhaseAssignment& phases);

// Prefix products after each element; the last entry equals chain_matrix.
std::vector<Matrix2> monitor_matrices(const Chain& c, const PhaseAssignment& phases);

// Output fields by explicit enumeration of every optical path through the
// chain (per-element scalar couplings multiplied along each path, summed per
// output port). Verification oracle for chain_matrix; limited to chains of
// at most 12 elements.
FieldPair path_sum_oracle(const Chain& c, const PhaseAssignment& phases, const FieldPair& input);

// 2n stages whose upper-arm offsets alternate +delta_f, -delta_f (lower arms
// at the reference frequency), joined by psi = 0 couplings, all
// transmissions 1.
Chain canonical_cascade(std::size_t n_blocks, double delta_f_hz);

// Returns a copy of the chain with one addressed field updated.
Chain set_path(const Chain& c, const std::string& path, PathField field, double value);

} // namespace cbw

#endif // CBW_CHAIN_HPP
