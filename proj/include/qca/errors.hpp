#pragma once

#include <stdexcept>
#include <string>

namespace qca {

// Floating-point reconstruction or identity check missed its stated tolerance.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Merit factor requested for an array whose sidelobe energy is zero.
class undefined_merit_error : public std::runtime_error {
public:
    explicit undefined_merit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qca
