#pragma once

#include <stdexcept>
#include <string>

namespace taildep {

// Base of every error raised by the library. The category decides how the
// command line front end maps a failure onto its exit code.
class Error : public std::runtime_error {
public:
    enum class Category { configuration, data, numerical };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class ParameterDomainError : public Error {
public:
    explicit ParameterDomainError(const std::string& what)
        : Error(Category::configuration, what) {}
};

class ConfigurationError : public Error {
public:
    explicit ConfigurationError(const std::string& what)
        : Error(Category::configuration, what) {}
};

class NotRegularlyVaryingError : public Error {
public:
    explicit NotRegularlyVaryingError(const std::string& what)
        : Error(Category::configuration, what) {}
};

// Input data that cannot be used: out of support, too short, ragged, unparseable.
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(Category::data, what) {}
};

class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

class ShapeError : public DataError {
public:
    using DataError::DataError;
};

// A quantity is undefined for the realized data (zero variance, no exceedances,
// vanishing denominators).
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& what)
        : Error(Category::numerical, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error(Category::numerical, what) {}
};

}  // namespace taildep
