#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qquiver {

// Thrown when a modulus is below the smallest meaningful value (n < 2 for
// linear algebra over Z_n).
class InvalidModulus : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured work cap (enumeration size, oracle propagations, brute-force
// search space) would be exceeded. `requested` is the size that triggered it
// when it fits in 64 bits, otherwise UINT64_MAX; the message always carries
// the exact figure.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
        : std::runtime_error(what), requested_(requested), cap_(cap) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

// The closed-form predictor does not cover the requested parameters.
class UnsupportedParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two closed-form statements disagree for the requested cell; the caller
// has to compute instead of predicting.
class AmbiguousPrediction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant failed (e.g. an endomorphism maps a coloring outside
// the coloring set). Signals a bug or invalid input list, never user error.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qquiver
