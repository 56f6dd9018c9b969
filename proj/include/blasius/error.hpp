#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blasius {

enum class ErrorKind {
    domain,              // non-finite or out-of-range input
    singularity,         // direct-form rhs evaluated at f'' == 0
    budget,              // integrator step budget exhausted
    stiffness,           // step size fell below h_min
    divergence,          // integrated state became non-finite
    undefined_group,     // scaling exponent requested at n == 1/2
    exclusion,           // solve_nitm called at an excluded exponent
    exponent_singularity,// lambda requested with delta == 1
    bracket,             // shooting residual has no sign change
    convergence,         // root finder ran out of iterations
    specification,       // malformed sweep / config
    selection,           // unknown export column
    io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace blasius
