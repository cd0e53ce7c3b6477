#pragma once

#include <stdexcept>
#include <string>

namespace supercell {

// Base class for everything the simulator can throw on purpose.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input problems: malformed files, unknown keys, invariant violations.
// The CLI maps these to exit code 1.
struct ParseError : SimError {
    using SimError::SimError;
};

struct UnknownKeyError : ParseError {
    explicit UnknownKeyError(const std::string& key)
        : ParseError("unknown configuration key: " + key), key(key) {}
    std::string key;
};

struct ValidationError : SimError {
    using SimError::SimError;
};

// Runtime problems: the CLI maps these to exit code 2.
struct IoError : SimError {
    using SimError::SimError;
};

// Non-overlapping phantom placement failed within the retry budget.
struct PlacementExhausted : SimError {
    using SimError::SimError;
};

// A single link's rate fell below the configured rate floor.
struct OutageError : SimError {
    using SimError::SimError;
};

// A scenario needs a link that is in outage, so its energy is unbounded.
struct OutageInScenario : SimError {
    using SimError::SimError;
};

// A user has no serving link above the rate floor on any candidate tier.
struct NoFeasibleLink : SimError {
    using SimError::SimError;
};

// A serving plan does not partition the users, or references links the
// snapshot cannot provide.
struct MalformedPlan : SimError {
    using SimError::SimError;
};

// Aggregation was asked to summarize zero usable trials.
struct InsufficientTrials : SimError {
    using SimError::SimError;
};

// Brute-force enumeration refused an instance above its size bound.
struct TooLarge : SimError {
    using SimError::SimError;
};

}  // namespace supercell
