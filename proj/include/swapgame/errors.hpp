#pragma once

#include <stdexcept>
#include <string>

namespace swapgame {

// Parameter outside its documented domain. `field` names the offender.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Operation requires theta_a == theta_b.
class AsymmetryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Closed-form denominator vanishes; no finite value exists.
class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Deviation gap changes sign more than once over the scan grid.
class NonMonotoneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sweep specification names an unknown axis or output quantity.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure reading or writing a file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace swapgame
