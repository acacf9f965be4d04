#pragma once

#include <stdexcept>

namespace freehaag {

/// Thrown when an enumeration request exceeds the configured size ceiling.
class size_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a cumulant query reaches past a sequence's truncation order.
class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an input file cannot be parsed or fails validation.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace freehaag
