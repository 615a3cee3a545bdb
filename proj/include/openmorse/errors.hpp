#ifndef OPENMORSE_ERRORS_HPP
#define OPENMORSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace openmorse {

enum class errc {
    empty_generator,
    duplicate_vertex,
    not_subcomplex,
    not_in_complex,
    dimension_mismatch,
    cyclic_field,
    preset_conflict,
    not_morse,
    not_a_complex,
    infeasible_constraint,
    global_cycle,
    stuck_cell,
    non_elementary_step,
    overflow,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::empty_generator: return "EmptyGenerator";
    case errc::duplicate_vertex: return "DuplicateVertex";
    case errc::not_subcomplex: return "NotSubcomplex";
    case errc::not_in_complex: return "NotInComplex";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::cyclic_field: return "CyclicField";
    case errc::preset_conflict: return "PresetConflict";
    case errc::not_morse: return "NotMorse";
    case errc::not_a_complex: return "NotAComplex";
    case errc::infeasible_constraint: return "InfeasibleConstraint";
    case errc::global_cycle: return "GlobalCycle";
    case errc::stuck_cell: return "StuckCell";
    case errc::non_elementary_step: return "NonElementaryStep";
    case errc::overflow: return "Overflow";
    case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

// All domain errors carry a code so the CLI can map them to exit statuses
// and tests can assert the precise failure.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace openmorse

#endif
