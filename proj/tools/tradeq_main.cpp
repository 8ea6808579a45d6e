// tradeq: ideal trade structures, equilibrium prices and tariff scenarios.
//
//   tradeq validate      --imports C.csv --tau tau.csv
//   tradeq build-exports --imports C.csv --tau tau.csv
//   tradeq solve         --flows flows.csv --tau tau.csv --format structured --out report.json
//   tradeq tariff        --imports C.csv --tau tau.csv --reduction 0.5,1
//
// Exit codes: 0 success, 2 validation failure, 3 convergence failure,
// 4 I/O, parse or usage failure.

#include <CLI11.hpp>

#include <iostream>

#include "tradeq/io.hpp"
#include "tradeq/report.hpp"
#include "tradeq/scenario.hpp"

namespace {

constexpr int kInputFailure = 4;

void add_scenario_options(CLI::App& sub, tradeq::ScenarioConfig& config, std::string& flows,
                          std::string& imports, std::string& reduction, std::string& format,
                          std::string& out) {
    auto* flows_opt = sub.add_option("--flows", flows,
                                     "long-form flows file (exporter,importer,good,quantity)");
    auto* imports_opt =
        sub.add_option("--imports", imports, "import matrix file (rows: goods, columns: countries)");
    flows_opt->excludes(imports_opt);
    imports_opt->excludes(flows_opt);
    sub.add_option("--tau", config.tau_path, "allocation matrix (rows: countries, columns: goods)")
        ->required();
    sub.add_option("--reduction", reduction,
                   "reduction vector: inline list '0.5,1', a vector file, or an "
                   "importer,exporter,good,factor schedule");
    sub.add_option("--tol", config.tolerance, "solver step tolerance")->capture_default_str();
    sub.add_option("--max-iter", config.max_iterations, "solver iteration cap")
        ->capture_default_str();
    sub.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "structured", "json"}))
        ->capture_default_str();
    sub.add_option("--out", out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal trade structures, market-clearing prices and tariff scenarios"};
    app.require_subcommand(1);

    tradeq::ScenarioConfig config;
    std::string flows, imports, reduction, out;
    std::string format = "text";

    struct Entry {
        const char* name;
        const char* help;
        tradeq::Command command;
    };
    const Entry entries[] = {
        {"validate", "run all input validators", tradeq::Command::Validate},
        {"build-exports", "construct the ideal export matrix", tradeq::Command::BuildExports},
        {"solve", "construct exports and solve for equilibrium prices", tradeq::Command::Solve},
        {"tariff", "solve, then apply a reduction vector", tradeq::Command::Tariff},
    };
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_scenario_options(*sub, config, flows, imports, reduction, format, out);
        sub->callback([&config, command = e.command] { config.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputFailure;
    }

    if (!flows.empty()) config.flows_path = flows;
    if (!imports.empty()) config.imports_path = imports;
    if (!reduction.empty()) config.reduction = reduction;
    if (!out.empty()) config.output_path = out;
    config.format = format == "text" ? tradeq::OutputFormat::Text : tradeq::OutputFormat::Structured;

    const tradeq::RunReport report = tradeq::run_scenario(config);
    const std::string rendered = tradeq::render(report, config.format);
    if (config.output_path) {
        try {
            tradeq::io::write_file_atomically(*config.output_path, rendered);
        } catch (const tradeq::Error& e) {
            std::cerr << e.what() << "\n";
            return kInputFailure;
        }
    } else {
        std::cout << rendered;
    }
    if (report.failure) std::cerr << report.failure->message << "\n";
    return report.exit_code();
}
