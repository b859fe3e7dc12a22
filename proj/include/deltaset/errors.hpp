#pragma once

#include <stdexcept>
#include <string>

namespace deltaset {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cayley table fails range or shape checks.
struct malformed_table_error : error {
    using error::error;
};

// A truncated-N product fell outside the horizon.
struct out_of_window_error : error {
    using error::error;
};

// Operation requires structure the carrier does not have (identity, group, ...).
struct unsupported_error : error {
    using error::error;
};

struct invalid_input_error : error {
    using error::error;
};

// A documented precondition of an operation was violated by the caller.
struct precondition_error : error {
    using error::error;
};

// A search exhausted its node budget before reaching a definite answer.
struct indeterminate_error : error {
    using error::error;
};

struct invalid_branch_error : error {
    using error::error;
};

struct hypothesis_violated_error : error {
    using error::error;
};

// An identity that should hold on audited inputs failed; signals a broken
// oracle or measure rather than a user error.
struct theorem_violation_error : error {
    using error::error;
};

}  // namespace deltaset
