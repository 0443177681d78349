#pragma once

#include <stdexcept>
#include <string>

namespace qps {

// Base class for everything the library can throw. The CLI maps any
// Error to exit code 1; usage problems are handled before the library
// is reached and map to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rule's precondition does not occur in the working memory.
struct NoMatchError : Error {
    using Error::Error;
};

// Two rules share an action string, so backward execution would be
// ambiguous (non-overlapping ranges required).
struct NotReversibleError : Error {
    using Error::Error;
};

// A transition table is multivalued or incomplete on some symbol.
struct NotDeterministicError : Error {
    using Error::Error;
};

// Copying onto a non-blank output tape would erase information.
struct OutputNotBlankError : Error {
    using Error::Error;
};

// An inverted rule's precondition is absent during backward execution:
// corrupted history or a leftmost-policy mismatch.
struct InverseNoMatchError : Error {
    using Error::Error;
};

// Backward execution completed but did not restore the initial memory,
// or the cross-check re-run disagreed with the output tape.
struct ReversalMismatchError : Error {
    using Error::Error;
};

// A stochastic control table whose per-condition probabilities do not
// sum to 1.
struct NotNormalizedError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

// A state or value does not fit the register/code width it is given.
struct EncodingOverflowError : Error {
    using Error::Error;
};

// A basis-state code has no assigned decoding.
struct DecodeFailureError : Error {
    using Error::Error;
};

// A dense export or simulation exceeds the desk-scale guard.
struct TooLargeError : Error {
    using Error::Error;
};

// Malformed system-definition or data file; carries a 1-based line number.
struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

}  // namespace qps
