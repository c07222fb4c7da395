#pragma once

#include <stdexcept>
#include <string>

namespace exstab {

// Violated precondition: mismatched sizes, non-permutation rows, bad matchings.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured work cap would be exceeded; the message states the required cost.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text input; `line` is the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

}  // namespace exstab
