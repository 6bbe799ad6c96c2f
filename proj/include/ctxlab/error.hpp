#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ctxlab {

/// Malformed input: bad ids, wrong shapes, failed preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Edge values that violate a triangle inequality where a valid distribution is required.
class InvalidDistribution : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// An enumeration would exceed its configured size limit. Never truncated silently.
class GuardrailExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size limits for the exponential enumerations.
struct Limits {
    /// Deterministic assignments enumerated by LP, support and orbit computations.
    std::uint64_t max_assignments = std::uint64_t{1} << 20;
    /// Edge count accepted by double-description vertex enumeration.
    std::size_t max_dd_edges = 12;
    /// Distributions produced by contextual-vertex generation.
    std::uint64_t max_generated = std::uint64_t{1} << 16;

    /// Defaults, with CTXLAB_GUARDRAIL (if set to a positive integer) replacing both count limits.
    static Limits from_environment();
};

}  // namespace ctxlab
