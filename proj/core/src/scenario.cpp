#include "tradeq/scenario.hpp"

#include <cmath>
#include <fstream>

#include "tradeq/io.hpp"
#include "tradeq/structure_builder.hpp"

namespace tradeq {

std::string_view to_string(Command command) noexcept {
    switch (command) {
        case Command::Validate: return "validate";
        case Command::BuildExports: return "build-exports";
        case Command::Solve: return "solve";
        case Command::Tariff: return "tariff";
    }
    return "unknown";
}

void validate_config(const ScenarioConfig& config) {
    if (config.flows_path.has_value() == config.imports_path.has_value()) {
        throw Error(ErrorKind::InvalidConfig, "give exactly one of a flows file or an import matrix");
    }
    if (config.tau_path.empty()) {
        throw Error(ErrorKind::InvalidConfig, "an allocation (tau) matrix is required");
    }
    if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
        throw Error(ErrorKind::InvalidConfig, "tolerance must be > 0");
    }
    if (config.max_iterations < 1) {
        throw Error(ErrorKind::InvalidConfig, "max_iterations must be >= 1");
    }
    if (config.command == Command::Tariff && !config.reduction) {
        throw Error(ErrorKind::InvalidConfig, "the tariff command needs a reduction vector");
    }
}

bool ValidationSection::passed() const noexcept {
    auto ok = [](const std::optional<ValidationReport>& r) { return !r || r->passed(); };
    return ok(conservation_observed) && ok(positivity) && ok(tau) && ok(conservation_ideal) &&
           (!coupling || coupling->irreducible);
}

int RunReport::exit_code() const noexcept {
    if (failure) {
        switch (classify(failure->kind)) {
            case ErrorClass::Validation: return 2;
            case ErrorClass::Convergence: return 3;
            case ErrorClass::Input: return 4;
        }
    }
    return validation.passed() ? 0 : 2;
}

namespace {

double max_abs(const Vector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

struct LoadedScenario {
    ImportMatrix imports;
    std::optional<ExportMatrix> observed_exports;
    TauMatrix tau;
    std::optional<ReductionVector> reduction;
};

ReductionVector load_reduction(const ScenarioConfig& config, const RunReport& report) {
    const std::string& argument = *config.reduction;
    const std::filesystem::path path(argument);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        return io::parse_reduction_list(argument, report.goods).reduction;
    }
    if (io::is_reduction_schedule(path)) {
        std::ifstream in(path, std::ios::binary);
        const io::LabelledSchedule schedule = io::parse_reduction_schedule(in, path.string());
        const ReductionSchedule aligned =
            io::align_schedule(schedule, report.countries, report.goods);
        try {
            return collapse_reductions(aligned, config.tolerance);
        } catch (const AsymmetricScheduleError& e) {
            throw Error(ErrorKind::AsymmetricSchedule,
                        "good '" + report.goods[e.good()] + "' is reduced differently on pair (" +
                            report.countries[e.origin()] + "," +
                            report.countries[e.destination()] + ")");
        }
    }
    return io::align_reduction(io::to_reduction(io::load_matrix(path)), report.goods).reduction;
}

LoadedScenario load(const ScenarioConfig& config, RunReport& report) {
    std::optional<ImportMatrix> imports;
    std::optional<ExportMatrix> observed;
    if (config.flows_path) {
        BilateralFlowSet flows = io::load_flows(*config.flows_path);
        AggregatedTrade aggregated = aggregate_flows(flows);
        report.countries = std::move(flows.countries);
        report.goods = std::move(flows.goods);
        imports = std::move(aggregated.imports);
        observed = std::move(aggregated.exports);
    } else {
        io::LabelledImports labelled = io::to_imports(io::load_matrix(*config.imports_path));
        report.countries = std::move(labelled.countries);
        report.goods = std::move(labelled.goods);
        imports = std::move(labelled.imports);
    }
    report.imports = imports->values();

    // Row sums are checked by the validation stage, so the grid is taken raw here.
    io::LabelledMatrix grid = io::load_matrix(config.tau_path);
    const io::LabelledTau raw{std::move(grid.row_labels), std::move(grid.column_labels),
                              TauMatrix(std::move(grid.values))};
    TauMatrix tau = io::align_tau(raw, report.countries, report.goods).tau;
    report.tau = tau.values();

    std::optional<ReductionVector> reduction;
    if (config.reduction && config.command == Command::Tariff) {
        reduction = load_reduction(config, report);
    }
    return {std::move(*imports), std::move(observed), std::move(tau), std::move(reduction)};
}

std::optional<Failure> first_validation_failure(const ValidationSection& v) {
    auto describe = [](const ValidationReport& r) {
        const Violation& first = r.violations.front();
        return first.check + " fails at index " + std::to_string(first.index) + " (magnitude " +
               std::to_string(first.magnitude) + ")";
    };
    if (v.positivity && !v.positivity->passed()) {
        return Failure{ErrorKind::PositivityViolation, "validate", describe(*v.positivity), {}};
    }
    if (v.tau && !v.tau->passed()) {
        return Failure{ErrorKind::InvalidTau, "validate", describe(*v.tau), {}};
    }
    if (v.coupling && !v.coupling->irreducible) {
        return Failure{ErrorKind::IrreducibilityViolation, "validate",
                       "goods coupling matrix t = C tau is decomposable", v.coupling->components};
    }
    if (v.conservation_observed && !v.conservation_observed->passed()) {
        return Failure{ErrorKind::ConservationViolation, "validate",
                       describe(*v.conservation_observed), {}};
    }
    if (v.conservation_ideal && !v.conservation_ideal->passed()) {
        return Failure{ErrorKind::ConservationViolation, "validate",
                       describe(*v.conservation_ideal), {}};
    }
    return std::nullopt;
}

ValidationSection validate(const LoadedScenario& s) {
    ValidationSection v;
    if (s.observed_exports) {
        v.conservation_observed = validate_conservation(s.imports, *s.observed_exports);
    }
    v.positivity = validate_positivity(s.imports);
    v.tau = validate_tau(s.tau);
    v.tau_row_sums = s.tau.values().rowwise().sum();
    v.coupling = check_irreducible(build_goods_coupling(s.imports, s.tau).values());
    if (v.positivity->passed() && v.tau->passed()) {
        v.mixing = check_irreducible(build_mixing_matrix(s.imports, s.tau).values());
        if (v.coupling->irreducible) {
            v.conservation_ideal =
                validate_conservation(s.imports, build_ideal_exports(s.imports, s.tau));
        }
    }
    return v;
}

void run_pipeline(const ScenarioConfig& config, RunReport& report, std::string& stage) {
    stage = "config";
    validate_config(config);

    stage = "load";
    LoadedScenario loaded = load(config, report);

    stage = "validate";
    report.validation = validate(loaded);
    if (auto failure = first_validation_failure(report.validation)) {
        report.failure = std::move(failure);
        return;
    }
    if (config.command == Command::Validate) return;

    stage = "build-exports";
    const TauMatrix tau = normalize_tau(loaded.tau.values());
    const ExportMatrix exports = build_ideal_exports(loaded.imports, tau);
    ExportsSection& ex = report.exports.emplace();
    ex.ideal = exports.values();
    if (loaded.observed_exports) {
        ex.observed = loaded.observed_exports->values();
        ex.difference_max_abs = (ex.ideal - *ex.observed).cwiseAbs().maxCoeff();
    }
    if (config.command == Command::BuildExports) return;

    stage = "solve";
    const EquilibriumSolution solution =
        solve_prices(loaded.imports, tau, SolveOptions{config.tolerance, config.max_iterations});
    const PriceVector& p0 = solution.prices;
    EquilibriumSection& eq = report.equilibrium.emplace();
    eq.prices = p0.values();
    eq.lambda = solution.lambda;
    eq.iterations = solution.iterations;
    eq.step_delta = solution.step_delta;
    eq.country_values = country_values(loaded.imports, p0);
    eq.country_shares = eq.country_values / eq.country_values.sum();
    eq.clearing_residual = clearing_residual(loaded.imports, exports, p0);
    eq.clearing_residual_norm = max_abs(eq.clearing_residual);
    eq.balance = balance_vector(loaded.imports, exports, p0);
    eq.balance_norm = max_abs(eq.balance);
    const MixingMatrix mixing = build_mixing_matrix(loaded.imports, tau);
    eq.stationarity_defect_norm =
        max_abs(mixing.values().transpose() * eq.country_values - eq.country_values);
    eq.stationarity_passed =
        verify_stationarity(mixing, eq.country_values, kReportVerificationTolerance).passed();
    if (loaded.observed_exports) {
        eq.observed_balance = balance_vector(loaded.imports, *loaded.observed_exports, p0);
    }
    if (config.command == Command::Solve) return;

    stage = "tariff";
    const ReductionVector& r = *loaded.reduction;
    const TariffOutcome outcome = evaluate_tariff(loaded.imports, exports, p0, r);
    TariffSection& tariff = report.tariff.emplace();
    tariff.reduction = r.values();
    tariff.raw_prices = outcome.impact.raw_prices.values();
    tariff.normalized_prices = outcome.impact.normalized_prices.values();
    tariff.price_ratios = outcome.impact.price_ratios;
    tariff.increases = outcome.impact.increases;
    tariff.residual = outcome.residual;
    tariff.residual_norm = max_abs(outcome.residual);
    tariff.scaled_balance_norm = max_abs(outcome.scaled_balance);
    tariff.verified = verify_tariff_solution(loaded.imports, exports, r,
                                             outcome.impact.raw_prices,
                                             kReportVerificationTolerance)
                          .passed();
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config) {
    RunReport report;
    report.command = config.command;
    report.input_mode = config.flows_path ? "flows" : "matrix";
    if (config.flows_path) report.flows_path = config.flows_path->string();
    if (config.imports_path) report.imports_path = config.imports_path->string();
    report.tau_path = config.tau_path.string();
    report.reduction = config.reduction;
    report.tolerance = config.tolerance;
    report.max_iterations = config.max_iterations;

    std::string stage;
    try {
        run_pipeline(config, report, stage);
    } catch (const IrreducibilityError& e) {
        report.failure = Failure{e.kind(), stage, e.what(), e.components()};
    } catch (const Error& e) {
        report.failure = Failure{e.kind(), stage, e.what(), {}};
    }
    return report;
}

}  // namespace tradeq
