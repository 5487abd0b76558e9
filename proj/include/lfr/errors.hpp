#pragma once

#include <stdexcept>
#include <string>

namespace lfr {

// Dimension disagreement between operands (matrix shapes, vector lengths).
struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operands constructed over different prime fields, or an invalid field order.
struct field_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct singular_matrix_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameters outside their stated domain (mu/lambda outside [0,1], 1/lambda
// not an integer, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A scheme cannot run for the given configuration: divisibility violated or
// the variant does not apply to the memory regime.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Brute-force search space exceeds the caller-supplied cap.
struct capacity_error : std::length_error {
    using std::length_error::length_error;
};

// Transcript inconsistent with the plan it claims to come from.
struct decode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lfr
