#pragma once

#include <stdexcept>
#include <string>

namespace volcp {

// Malformed input: bad files, out-of-range arguments, invalid configuration.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that cannot produce a finite, well-defined result.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace volcp
