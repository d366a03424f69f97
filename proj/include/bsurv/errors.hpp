#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsurv {

// Invalid input for an operation (bad word, out-of-range base, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A block decoding failed; position is the digit offset where no block matched.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// A configured cap (iterations, states, word length) was exhausted.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested result needs more precision than the inputs carry.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bsurv
