#include "blasius/error.hpp"

namespace blasius {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::singularity: return "singularity";
        case ErrorKind::budget: return "budget";
        case ErrorKind::stiffness: return "stiffness";
        case ErrorKind::divergence: return "divergence";
        case ErrorKind::undefined_group: return "undefined_group";
        case ErrorKind::exclusion: return "exclusion";
        case ErrorKind::exponent_singularity: return "exponent_singularity";
        case ErrorKind::bracket: return "bracket";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::specification: return "specification";
        case ErrorKind::selection: return "selection";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace blasius
