#pragma once

#include <stdexcept>
#include <string>

namespace mzi {

// A requested state or parameter combination has no usable physical content,
// e.g. zero squeezing for a photon-subtracted family.
class DegenerateStateError : public std::invalid_argument {
public:
    explicit DegenerateStateError(const std::string& what) : std::invalid_argument(what) {}
};

// A Fock-space computation would lose more probability mass past the cutoff
// than the accuracy contract allows. Carries a suggestion usable for retry.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, int suggested_cutoff)
        : std::runtime_error(what), suggested_cutoff_(suggested_cutoff) {}

    int suggested_cutoff() const { return suggested_cutoff_; }

private:
    int suggested_cutoff_;
};

// A root solve was asked for a target value outside the reachable range.
// Carries the boundary of what is attainable.
class UnattainableTargetError : public std::domain_error {
public:
    UnattainableTargetError(const std::string& what, double attainable_min)
        : std::domain_error(what), attainable_min_(attainable_min) {}

    double attainable_min() const { return attainable_min_; }

private:
    double attainable_min_;
};

// Two supposedly equivalent computational routes disagreed beyond tolerance.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace mzi
