#pragma once

#include <stdexcept>
#include <string>

namespace freqaug {

/// Unreadable or malformed input data. CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Training diverged or arithmetic went non-finite. CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freqaug
