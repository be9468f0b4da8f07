#pragma once

#include <stdexcept>
#include <string>

namespace mtc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A float refused to round to an integer within tol_int.
struct NotNearInteger : Error {
    explicit NotNearInteger(const std::string& msg) : Error(msg) {}
};

// No p/q with q <= max_den lies within tol_int/q of the input.
struct NotNearRational : Error {
    explicit NotNearRational(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Lifting a numeric kernel to exact rationals ran out of precision or
// denominator budget.
struct RationalizationFailed : Error {
    explicit RationalizationFailed(const std::string& msg) : Error(msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

struct MiddleCategoryMismatch : Error {
    explicit MiddleCategoryMismatch(const std::string& msg) : Error(msg) {}
};

// A product matrix admits no decomposition over the supplied library.
// On a complete classified library this indicates a classification bug.
struct NoDecomposition : Error {
    explicit NoDecomposition(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

} // namespace mtc
