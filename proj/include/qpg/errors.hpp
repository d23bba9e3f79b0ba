#pragma once
#include <stdexcept>
#include <string>

namespace qpg {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct out_of_validity_range : error {
    using error::error;
};
struct no_root : error {
    using error::error;
};
struct grid_not_converged : error {
    using error::error;
};
struct fit_failed : error {
    using error::error;
};
struct numerical_failure : error {
    using error::error;
};
struct truncation_insufficient : error {
    using error::error;
};
struct monte_carlo_underflow : error {
    using error::error;
};
struct invalid_ordering : error {
    using error::error;
};
struct division_by_zero : error {
    using error::error;
};
struct target_unreachable : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct config_error : error {
    using error::error;
};

} // namespace qpg
