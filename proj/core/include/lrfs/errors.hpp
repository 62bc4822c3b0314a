#pragma once

#include <stdexcept>
#include <string>

namespace lrfs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
};

/// A density violates a structural invariant (missing label, bad weights).
class InconsistentDensity : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "inconsistent_density"; }
};

/// Linear algebra failed even after regularization.
class NumericalError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "numerical_error"; }
};

/// GCI fusion found no label set shared by every input.
class FusionFailure : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "fusion_failure"; }
};

/// Truncation removed every hypothesis.
class TruncationError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "truncation_error"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "config_error"; }
};

/// Brute-force oracle asked to enumerate more terms than its budget allows.
class BudgetExceeded : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "budget_exceeded"; }
};

}  // namespace lrfs
