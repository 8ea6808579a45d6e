#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tradeq/equilibrium.hpp"
#include "tradeq/irreducibility.hpp"
#include "tradeq/tariff.hpp"
#include "tradeq/trade_core.hpp"

namespace tradeq {

enum class Command { Validate, BuildExports, Solve, Tariff };
enum class OutputFormat { Text, Structured };

std::string_view to_string(Command command) noexcept;

/// Residual norms in reports are flagged as verified at this bound.
inline constexpr double kReportVerificationTolerance = 1e-9;

struct ScenarioConfig {
    Command command = Command::Solve;
    std::optional<std::filesystem::path> flows_path;
    std::optional<std::filesystem::path> imports_path;
    std::filesystem::path tau_path;
    /// A file (vector grid or long-form schedule) or an inline list "0.5,1".
    std::optional<std::string> reduction;
    double tolerance = 1e-12;
    std::size_t max_iterations = 100000;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::filesystem::path> output_path;
};

/// Throws InvalidConfig.
void validate_config(const ScenarioConfig& config);

struct ValidationSection {
    std::optional<ValidationReport> conservation_observed;
    std::optional<ValidationReport> positivity;
    std::optional<ValidationReport> tau;
    Vector tau_row_sums;
    std::optional<IrreducibilityResult> coupling;
    /// Reported only; a reducible mixing matrix does not fail validation.
    std::optional<IrreducibilityResult> mixing;
    std::optional<ValidationReport> conservation_ideal;

    [[nodiscard]] bool passed() const noexcept;
};

struct ExportsSection {
    Matrix ideal;
    std::optional<Matrix> observed;
    std::optional<double> difference_max_abs;
};

struct EquilibriumSection {
    Vector prices;
    double lambda = 0.0;
    Vector country_values;
    Vector country_shares;
    std::size_t iterations = 0;
    double step_delta = 0.0;
    Vector clearing_residual;
    double clearing_residual_norm = 0.0;
    Vector balance;
    double balance_norm = 0.0;
    double stationarity_defect_norm = 0.0;
    bool stationarity_passed = false;
    /// Flows mode: per-country balance of the observed exports at p0.
    std::optional<Vector> observed_balance;
};

struct TariffSection {
    Vector reduction;
    Vector raw_prices;
    Vector normalized_prices;
    Vector price_ratios;
    std::vector<PriceIncrease> increases;
    Vector residual;
    double residual_norm = 0.0;
    double scaled_balance_norm = 0.0;
    bool verified = false;
};

struct Failure {
    ErrorKind kind = ErrorKind::InvalidConfig;
    std::string stage;
    std::string message;
    Components components;
};

struct RunReport {
    Command command = Command::Solve;
    std::string input_mode;
    std::optional<std::string> flows_path;
    std::optional<std::string> imports_path;
    std::string tau_path;
    std::optional<std::string> reduction;
    double tolerance = 0.0;
    std::size_t max_iterations = 0;

    std::vector<std::string> countries;
    std::vector<std::string> goods;
    std::optional<Matrix> imports;
    std::optional<Matrix> tau;

    ValidationSection validation;
    std::optional<ExportsSection> exports;
    std::optional<EquilibriumSection> equilibrium;
    std::optional<TariffSection> tariff;
    std::optional<Failure> failure;

    /// 0 success, 2 validation failure, 3 convergence failure, 4 I/O or
    /// parse failure.
    [[nodiscard]] int exit_code() const noexcept;
};

/// load -> validate -> build_ideal_exports -> solve_prices -> tariff, as far
/// as the command requires. Library errors do not escape: the first failure
/// is recorded in the report and later stages are skipped. Residuals are
/// recomputed from the final outputs.
RunReport run_scenario(const ScenarioConfig& config);

}  // namespace tradeq
