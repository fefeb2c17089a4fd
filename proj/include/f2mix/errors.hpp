#pragma once

#include <stdexcept>
#include <string>

namespace f2mix {

// Bad algorithm parameters (wmin out of range, zero ambient, ...).
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Weight estimation requested for a mixture with a0 == a1.
struct Unidentifiable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Find-A-Good-Projector exhausted its retry budget at some level.
struct ProjectionStalled : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Base-case solver found no pair of subspaces covering the sample support.
struct BaseCaseFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Large-diff recovery returned subspaces whose dimensions contradict the
// hypothesized (d0, d1); signals a wrong dimension guess to the driver.
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyHypothesisList : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance generator asked for an impossible configuration.
struct InfeasibleSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A budget-limited oracle ran out of samples.
struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace f2mix
