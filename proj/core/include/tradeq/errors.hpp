#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tradeq {

/// Every failure the library can raise. The CLI maps each kind onto a
/// process exit code through classify().
enum class ErrorKind {
    DimensionMismatch,
    NegativeEntry,
    PositivityViolation,
    ConservationViolation,
    InvalidTau,
    IrreducibilityViolation,
    ConvergenceFailure,
    ZeroSpend,
    InvalidReduction,
    AsymmetricSchedule,
    InvalidPrice,
    LabelMismatch,
    ParseError,
    SelfFlow,
    NegativeQuantity,
    EmptyInput,
    RaggedRows,
    NonNumericCell,
    IoError,
    InvalidConfig,
};

enum class ErrorClass { Validation, Convergence, Input };

std::string_view to_string(ErrorKind kind) noexcept;
ErrorClass classify(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

using Components = std::vector<std::vector<std::size_t>>;

/// Raised when the goods coupling matrix is decomposable. Carries the
/// strongly connected components in condensation order.
class IrreducibilityError : public Error {
public:
    IrreducibilityError(const std::string& what, Components components);

    [[nodiscard]] const Components& components() const noexcept { return components_; }

private:
    Components components_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(std::size_t iterations, double step_delta);

    [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }
    [[nodiscard]] double step_delta() const noexcept { return step_delta_; }

private:
    std::size_t iterations_;
    double step_delta_;
};

/// A reduction schedule whose factors for one good differ between country
/// pairs, i.e. the reduction is not a function of the good alone.
class AsymmetricScheduleError : public Error {
public:
    AsymmetricScheduleError(std::size_t good, std::size_t origin, std::size_t destination,
                            double expected, double found);

    [[nodiscard]] std::size_t good() const noexcept { return good_; }
    [[nodiscard]] std::size_t origin() const noexcept { return origin_; }
    [[nodiscard]] std::size_t destination() const noexcept { return destination_; }

private:
    std::size_t good_;
    std::size_t origin_;
    std::size_t destination_;
};

/// Input errors that can be pinned to a position in a source file.
/// Line and column are 1-based; 0 means "not applicable".
class InputError : public Error {
public:
    InputError(ErrorKind kind, const std::string& source, std::size_t line, std::size_t column,
               const std::string& detail);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace tradeq
