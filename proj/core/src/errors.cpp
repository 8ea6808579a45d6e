#include "tradeq/errors.hpp"

#include <sstream>

namespace tradeq {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::PositivityViolation: return "PositivityViolation";
        case ErrorKind::ConservationViolation: return "ConservationViolation";
        case ErrorKind::InvalidTau: return "InvalidTau";
        case ErrorKind::IrreducibilityViolation: return "IrreducibilityViolation";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::ZeroSpend: return "ZeroSpend";
        case ErrorKind::InvalidReduction: return "InvalidReduction";
        case ErrorKind::AsymmetricSchedule: return "AsymmetricSchedule";
        case ErrorKind::InvalidPrice: return "InvalidPrice";
        case ErrorKind::LabelMismatch: return "LabelMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SelfFlow: return "SelfFlow";
        case ErrorKind::NegativeQuantity: return "NegativeQuantity";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::RaggedRows: return "RaggedRows";
        case ErrorKind::NonNumericCell: return "NonNumericCell";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

ErrorClass classify(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ConvergenceFailure:
            return ErrorClass::Convergence;
        case ErrorKind::ParseError:
        case ErrorKind::SelfFlow:
        case ErrorKind::NegativeQuantity:
        case ErrorKind::EmptyInput:
        case ErrorKind::RaggedRows:
        case ErrorKind::NonNumericCell:
        case ErrorKind::IoError:
        case ErrorKind::InvalidConfig:
            return ErrorClass::Input;
        default:
            return ErrorClass::Validation;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {

std::string describe_components(const std::string& what, const Components& components) {
    std::ostringstream os;
    os << what << "; " << components.size() << " strongly connected components:";
    for (const auto& component : components) {
        os << " {";
        for (std::size_t i = 0; i < component.size(); ++i) {
            os << (i ? "," : "") << component[i];
        }
        os << "}";
    }
    return os.str();
}

}  // namespace

IrreducibilityError::IrreducibilityError(const std::string& what, Components components)
    : Error(ErrorKind::IrreducibilityViolation, describe_components(what, components)),
      components_(std::move(components)) {}

ConvergenceError::ConvergenceError(std::size_t iterations, double step_delta)
    : Error(ErrorKind::ConvergenceFailure,
            "no convergence after " + std::to_string(iterations) +
                " iterations (final step delta " + std::to_string(step_delta) + ")"),
      iterations_(iterations),
      step_delta_(step_delta) {}

AsymmetricScheduleError::AsymmetricScheduleError(std::size_t good, std::size_t origin,
                                                 std::size_t destination, double expected,
                                                 double found)
    : Error(ErrorKind::AsymmetricSchedule,
            "reduction factor for good " + std::to_string(good) + " on pair (" +
                std::to_string(origin) + "," + std::to_string(destination) + ") is " +
                std::to_string(found) + ", other pairs use " + std::to_string(expected)),
      good_(good),
      origin_(origin),
      destination_(destination) {}

namespace {

std::string locate(const std::string& source, std::size_t line, std::size_t column,
                   const std::string& detail) {
    std::string out = source;
    if (line != 0) {
        out += ":" + std::to_string(line);
        if (column != 0) out += ":" + std::to_string(column);
    }
    return out + ": " + detail;
}

}  // namespace

InputError::InputError(ErrorKind kind, const std::string& source, std::size_t line,
                       std::size_t column, const std::string& detail)
    : Error(kind, locate(source, line, column, detail)), line_(line), column_(column) {}

}  // namespace tradeq
