#pragma once

#include <stdexcept>
#include <string>

namespace bbprec {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed or inconsistent study input (ingestion, validation).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The data cannot support the beta-binomial model fit: zero within-lab
// variation or non-positive between-lab variance. `raw_value` carries the
// offending estimate so reports can show it.
class DegenerateModel : public std::runtime_error {
public:
    enum class Kind { NoWithinLabVariation, NoBetweenLabVariation };

    DegenerateModel(Kind kind, double raw_value, const std::string& what)
        : std::runtime_error(what), kind_(kind), raw_value_(raw_value) {}

    Kind kind() const noexcept { return kind_; }
    double raw_value() const noexcept { return raw_value_; }

private:
    Kind kind_;
    double raw_value_;
};

// Jeffreys-type shape x-a+1 or n-x-b+1 not positive for some lab.
class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbprec
