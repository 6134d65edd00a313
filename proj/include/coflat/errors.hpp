#pragma once

#include <stdexcept>
#include <string>

namespace coflat {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched variable spaces or matrix shapes.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Malformed text input (polynomials, structure files).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

/// Input violates a structural precondition (dependent coflat covectors,
/// matrix not antisymmetric, invalid structure constants, ...).
struct StructureError : Error {
    explicit StructureError(const std::string& msg) : Error(msg) {}
};

/// A bracket operand is outside the admissible algebra. Carries which
/// operand failed and the derivative order at which the failure occurs.
struct AdmissibilityError : Error {
    AdmissibilityError(const std::string& which_, int order_)
        : Error("operand " + which_ + " is not admissible (fails at derivative order "
                + std::to_string(order_) + ")"),
          which(which_), order(order_) {}
    std::string which;
    int order;
};

} // namespace coflat
