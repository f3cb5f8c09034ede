#pragma once

#include <stdexcept>
#include <string>

namespace lrfs {

/// Coarse failure category; the CLI maps it to a process exit code.
enum class ErrorCategory {
    Numerical = 2,
    Validation = 3,
    Fusion = 4,
    Runtime = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

/// A covariance or information matrix failed the positive-definiteness test.
class NotPositiveDefiniteError : public Error {
public:
    explicit NotPositiveDefiniteError(const std::string& what)
        : Error(ErrorCategory::Numerical, what) {}
};

/// Pairwise Chernoff weight requested with exponent 0 or 1.
class DegenerateExponentError : public Error {
public:
    explicit DegenerateExponentError(const std::string& what)
        : Error(ErrorCategory::Numerical, what) {}
};

/// Every pairwise component weight of a GM fusion vanished.
class EmptyFusionError : public Error {
public:
    explicit EmptyFusionError(const std::string& what)
        : Error(ErrorCategory::Fusion, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what)
        : Error(ErrorCategory::Validation, what) {}
};

class DuplicateLabelError : public ValidationError {
public:
    explicit DuplicateLabelError(const std::string& what) : ValidationError(what) {}
};

class UndirectedRequiredError : public ValidationError {
public:
    explicit UndirectedRequiredError(const std::string& what) : ValidationError(what) {}
};

/// Bearing requested for an object located exactly at the sensor.
class UndefinedAngleError : public Error {
public:
    explicit UndefinedAngleError(const std::string& what)
        : Error(ErrorCategory::Numerical, what) {}
};

}  // namespace lrfs
