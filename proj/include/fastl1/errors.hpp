#pragma once

#include <stdexcept>
#include <string>

namespace fastl1 {

/// Invalid input: bad parameters, malformed meshes, size mismatches.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (indefinite system, iteration cap hit).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The exponential-sum construction could not reach the requested tolerance.
class SoeCertificationError : public std::runtime_error {
public:
    SoeCertificationError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    [[nodiscard]] double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace fastl1
