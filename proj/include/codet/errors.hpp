#pragma once

#include <stdexcept>
#include <string>

namespace codet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two input values compare equal. The continuous-input model makes ties
/// probability zero, so a tie indicates corrupted input.
class DuplicateInputError : public Error {
public:
    explicit DuplicateInputError(double x)
        : Error("duplicate input value x = " + std::to_string(x)), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// Fewer observations than the operation requires.
class TooShortError : public Error {
public:
    using Error::Error;
};

/// All outputs equal: the ratio statistic is undefined (flat/dead channel).
class NoVariationError : public Error {
public:
    using Error::Error;
};

/// An input lies outside the transfer window [a, b].
class DomainViolationError : public Error {
public:
    using Error::Error;
};

/// A model or configuration parameter is out of range.
class BadParametersError : public Error {
public:
    using Error::Error;
};

/// The transfer function has (numerically) zero total variation.
class DegenerateTransferError : public Error {
public:
    using Error::Error;
};

/// Not enough defined points to classify a trend.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Case 2(iii) was reached but no endpoint information was supplied.
class EndpointInfoRequiredError : public Error {
public:
    using Error::Error;
};

/// Malformed CSV or config input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Transfer name not present in the registry.
class UnknownTransferError : public Error {
public:
    using Error::Error;
};

/// Scenario preset name not present in the catalog.
class UnknownPresetError : public Error {
public:
    using Error::Error;
};

} // namespace codet
