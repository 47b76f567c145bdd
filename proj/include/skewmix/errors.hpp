#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace skewmix {

// Violated precondition: shape mismatch, invalid option, bad argument range.
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of a special function.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine could not reach its accuracy target or produced an
// unusable intermediate (overflow, all-zero mixture weights, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
    numeric_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}

    // Estimated error actually achieved when a tolerance was missed; NaN if n/a.
    double achieved_error = std::numeric_limits<double>::quiet_NaN();
};

// Matrix passed where a symmetric positive definite one is required.
class not_positive_definite_error : public numeric_error {
public:
    explicit not_positive_definite_error(const std::string& what) : numeric_error(what) {}
};

// Malformed input file. Carries a 1-based row/column location when known.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long row = -1, long column = -1)
        : std::runtime_error(what), row(row), column(column) {}
    long row;
    long column;
};

} // namespace skewmix
