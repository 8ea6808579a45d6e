// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support/oracles.hpp"

namespace {

using namespace tradeq;
using testing::mat;
using testing::vec;

/// Collects the first failure message for a criterion.
class Check {
public:
    void expect(bool condition, const std::string& what) {
        if (!condition && ok_) {
            ok_ = false;
            detail_ = what;
        }
    }
    [[nodiscard]] bool ok() const { return ok_; }
    [[nodiscard]] const std::string& detail() const { return detail_; }

private:
    bool ok_ = true;
    std::string detail_;
};

int failures = 0;

void report(const char* id, const std::string& title, const Check& check, const std::string& note) {
    std::cout << (check.ok() ? "[PASS] " : "[FAIL] ") << id << ' ' << title;
    if (!note.empty()) std::cout << " (" << note << ')';
    if (!check.ok()) std::cout << ": " << check.detail();
    std::cout << '\n';
    if (!check.ok()) ++failures;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << x;
    return os.str();
}

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }
double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

struct Instance {
    ImportMatrix imports;
    TauMatrix tau;
};

std::vector<Instance> make_instances(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> size(2, 8);
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const Index n = size(rng);
        const Index l = size(rng);
        auto inst = testing::random_instance(rng, n, l);
        out.push_back({std::move(inst.imports), std::move(inst.tau)});
    }
    return out;
}

void ac1() {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    struct Case {
        const char* name;
        Matrix c, tau, b;
    };
    const Case cases[] = {
        {"E1", Matrix::Identity(2, 2), mat({{0, 1}, {1, 0}}), mat({{0, 1}, {1, 0}})},
        {"E2", mat({{2, 1}, {1, 2}}), Matrix::Identity(2, 2),
         mat({{5.0 / 3, 4.0 / 3}, {4.0 / 3, 5.0 / 3}})},
    };
    for (const Case& k : cases) {
        try {
            const ImportMatrix c(k.c);
            const TauMatrix tau(k.tau);
            const EquilibriumSolution s = solve_prices(c, tau);
            const ExportMatrix b = build_ideal_exports(c, tau);
            const std::string n = k.name;
            check.expect(max_diff(s.prices.values(), vec({0.5, 0.5})) < 1e-12, n + " p0");
            check.expect(std::abs(s.lambda - 1.0) < 1e-12, n + " lambda");
            check.expect(max_diff(b.values(), k.b) < 1e-12, n + " B");
            check.expect(inf_norm(balance_vector(c, b, s.prices)) < 1e-12, n + " balance");
        } catch (const std::exception& e) {
            check.expect(false, std::string(k.name) + " threw: " + e.what());
        }
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report("AC1", "hand-derived instances E1 and E2", check, sci(ms) + " ms");
}

void ac2_ac3_ac4(const std::vector<Instance>& instances) {
    Check equilibrium, construction, tariff;
    double worst_residual = 0, worst_balance = 0, worst_lambda = 0, worst_stationarity = 0;
    double worst_product = 0, worst_tariff = 0, worst_compose = 0;

    double solve_seconds = 0;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> factor(0.1, 1.0);
    std::bernoulli_distribution exactly_one(0.25);

    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const Instance& inst = instances[idx];
        const std::string tag = "instance " + std::to_string(idx);
        const Index n = inst.imports.rows();
        try {
            // Equilibrium
            const auto t0 = std::chrono::steady_clock::now();
            const EquilibriumSolution s = solve_prices(inst.imports, inst.tau);
            solve_seconds +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            const ExportMatrix b = build_ideal_exports(inst.imports, inst.tau);
            const auto c_grid = testing::to_grid(inst.imports.values());
            const auto b_grid = testing::to_grid(b.values());
            const auto p = testing::to_std(s.prices.values());
            const double residual = testing::max_abs(testing::clearing_brute(c_grid, b_grid, p));
            const double balance = testing::max_abs(testing::balance_brute(c_grid, b_grid, p));
            const MixingMatrix b1 = build_mixing_matrix(inst.imports, inst.tau);
            const Vector d = inst.imports.values().transpose() * s.prices.values();
            const double stationarity = inf_norm(b1.values().transpose() * d - d);
            worst_residual = std::max(worst_residual, residual);
            worst_balance = std::max(worst_balance, balance);
            worst_lambda = std::max(worst_lambda, std::abs(s.lambda - 1.0));
            worst_stationarity = std::max(worst_stationarity, stationarity);
            equilibrium.expect(residual < 1e-9, tag + " clearing residual " + sci(residual));
            equilibrium.expect(balance < 1e-9, tag + " balance " + sci(balance));
            equilibrium.expect(std::abs(s.lambda - 1.0) < 1e-9, tag + " lambda");
            equilibrium.expect(s.prices.values().minCoeff() > 0.0, tag + " positivity");
            equilibrium.expect(stationarity < 1e-9, tag + " stationarity " + sci(stationarity));

            // Construction identities
            const Matrix product = testing::to_matrix(testing::matmul(
                c_grid, testing::mixing_brute(c_grid, testing::to_grid(inst.tau.values()))));
            const double product_gap = max_diff(b.values(), product);
            worst_product = std::max(worst_product, product_gap);
            construction.expect(product_gap < 1e-12, tag + " B vs C B1 " + sci(product_gap));
            const Vector row_sums = b1.values().rowwise().sum();
            construction.expect(inf_norm(row_sums - Vector::Ones(row_sums.size())) < 1e-9,
                                tag + " B1 row sums");
            for (Index k = 0; k < n; ++k) {
                const double gap = std::abs(b.values().row(k).sum() - inst.imports.values().row(k).sum());
                construction.expect(gap < 1e-9, tag + " world sums for good " + std::to_string(k));
            }

            // Tariff equilibrium
            Vector rv(n), r2v(n);
            for (Index k = 0; k < n; ++k) {
                rv(k) = exactly_one(rng) ? 1.0 : factor(rng);
                r2v(k) = exactly_one(rng) ? 1.0 : factor(rng);
            }
            const ReductionVector r(rv), r2(r2v);
            const PriceVector pt = tariff_equilibrium(s.prices, r);
            const ScaledTrade scaled = apply_reduction(inst.imports, b, r);
            const double tariff_gap = testing::max_abs(
                testing::clearing_brute(testing::to_grid(scaled.imports.values()),
                                        testing::to_grid(scaled.exports.values()),
                                        testing::to_std(pt.values())));
            worst_tariff = std::max(worst_tariff, tariff_gap);
            tariff.expect(tariff_gap < 1e-9, tag + " reduced residual " + sci(tariff_gap));
            for (Index k = 0; k < n; ++k) {
                tariff.expect(pt[k] >= s.prices[k], tag + " price fell");
                tariff.expect((pt[k] > s.prices[k]) == (r[k] < 1.0), tag + " strictness");
            }
            const ReductionVector rr = compose(r, r2);
            const ScaledTrade twice = apply_reduction(scaled.imports, scaled.exports, r2);
            const ScaledTrade once = apply_reduction(inst.imports, b, rr);
            const double compose_gap = std::max(
                {max_diff(twice.imports.values(), once.imports.values()),
                 max_diff(twice.exports.values(), once.exports.values()),
                 max_diff(tariff_equilibrium(pt, r2).values(), tariff_equilibrium(s.prices, rr).values())});
            worst_compose = std::max(worst_compose, compose_gap);
            tariff.expect(compose_gap < 1e-12, tag + " composition " + sci(compose_gap));
        } catch (const std::exception& e) {
            equilibrium.expect(false, tag + " threw: " + e.what());
        }
    }
    equilibrium.expect(solve_seconds < 10.0, "solver time " + sci(solve_seconds) + " s");

    report("AC2", "500 random equilibria", equilibrium,
           "residual " + sci(worst_residual) + ", balance " + sci(worst_balance) + ", |lambda-1| " +
               sci(worst_lambda) + ", stationarity " + sci(worst_stationarity) + ", " +
               sci(solve_seconds) + " s");
    report("AC3", "construction identities", construction, "B vs C B1 " + sci(worst_product));
    report("AC4", "reduced-trade equilibria", tariff,
           "residual " + sci(worst_tariff) + ", composition " + sci(worst_compose));
}

void ac5() {
    Check check;
    double worst = 0;
    const auto instances = make_instances(77, 100);
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const Instance& inst = instances[idx];
        try {
            const EquilibriumSolution s = solve_prices(inst.imports, inst.tau);
            const Vector d = stationary_country_values(build_mixing_matrix(inst.imports, inst.tau));
            const PriceVector p = prices_from_country_values(inst.imports, inst.tau, d);
            const double gap = max_diff(p.values(), s.prices.values());
            worst = std::max(worst, gap);
            check.expect(gap < 1e-8, "instance " + std::to_string(idx) + " gap " + sci(gap));
        } catch (const std::exception& e) {
            check.expect(false, "instance " + std::to_string(idx) + " threw: " + e.what());
        }
    }
    report("AC5", "price-space and country-space routes agree", check, "max gap " + sci(worst));
}

void ac6() {
    Check check;
    try {
        build_ideal_exports(ImportMatrix(Matrix::Identity(2, 2)), TauMatrix(Matrix::Identity(2, 2)));
        check.expect(false, "decomposable coupling accepted");
    } catch (const IrreducibilityError& e) {
        check.expect(e.kind() == ErrorKind::IrreducibilityViolation, "wrong kind for decomposable");
        check.expect(e.components().size() == 2, "expected two components");
    }
    try {
        solve_prices(ImportMatrix(mat({{0, 0}, {1, 2}})), TauMatrix(mat({{0.5, 0.5}, {0.5, 0.5}})));
        check.expect(false, "zero world imports accepted");
    } catch (const Error& e) {
        check.expect(e.kind() == ErrorKind::PositivityViolation, "wrong kind for zero imports");
    }
    ReductionSchedule schedule;
    schedule.factors[{0, 1}] = vec({1.0, 0.5});
    schedule.factors[{1, 0}] = vec({1.0, 0.6});
    try {
        collapse_reductions(schedule, 1e-9);
        check.expect(false, "asymmetric schedule accepted");
    } catch (const AsymmetricScheduleError& e) {
        check.expect(e.kind() == ErrorKind::AsymmetricSchedule && e.good() == 1,
                     "asymmetric schedule names the wrong good");
    }
    report("AC6", "rejections", check, "");
}

void compare_pattern(Check& check, const testing::Grid& g, std::size_t& count) {
    const bool expected = testing::strongly_connected_brute(g);
    const IrreducibilityResult result = check_irreducible(testing::to_matrix(g));
    check.expect(result.irreducible == expected,
                 "disagreement on a " + std::to_string(g.size()) + "x" + std::to_string(g.size()) +
                     " pattern");
    check.expect(result.irreducible == (result.components.size() <= 1), "components vs verdict");
    ++count;
}

void ac7() {
    Check check;
    std::size_t count = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
        const std::size_t cells = k * k;
        for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
            testing::Grid g(k, std::vector<double>(k, 0.0));
            for (std::size_t bit = 0; bit < cells; ++bit)
                if (mask & (1u << bit)) g[bit / k][bit % k] = 1.0;
            compare_pattern(check, g, count);
        }
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    for (std::size_t k = 4; k <= 6; ++k) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::bernoulli_distribution edge(density(rng));
            testing::Grid g(k, std::vector<double>(k, 0.0));
            for (auto& row : g)
                for (double& x : row) x = edge(rng) ? 1.0 : 0.0;
            compare_pattern(check, g, count);
        }
    }
    report("AC7", "irreducibility against brute-force reachability", check,
           std::to_string(count) + " patterns");
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
    const std::string command =
        std::string("\"") + TRADEQ_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void ac8() {
    Check check;
    const std::filesystem::path data = TRADEQ_TEST_DATA_DIR;
    const auto dir = std::filesystem::temp_directory_path() / "tradeq_acceptance";
    std::filesystem::create_directories(dir);
    auto arg = [&](const char* file) { return "\"" + (data / file).string() + "\""; };

    const std::string tariff = "tariff --imports " + arg("imports3x4.csv") + " --tau " +
                               arg("tau3x4.csv") + " --reduction 0.5,0.9,1 --format structured";
    const int first = run_cli(tariff, dir / "a.json");
    const int second = run_cli(tariff, dir / "b.json");
    check.expect(first == 0 && second == 0, "tariff run exited " + std::to_string(first));
    const std::string a = slurp(dir / "a.json");
    check.expect(!a.empty() && a == slurp(dir / "b.json"), "structured reports differ");

    const int flows = run_cli("solve --flows " + arg("flows.csv") + " --tau " + arg("tau_half.csv") +
                                  " --format structured",
                              dir / "c.json");
    check.expect(flows == 0, "flows solve exited " + std::to_string(flows));

    const int reducible = run_cli(
        "solve --imports " + arg("imports_identity.csv") + " --tau " + arg("tau.csv"), dir / "d.txt");
    check.expect(reducible == 2, "decomposable input exited " + std::to_string(reducible));

    const int capped = run_cli("solve --imports " + arg("imports3x4.csv") + " --tau " +
                                   arg("tau3x4.csv") + " --max-iter 2",
                               dir / "e.txt");
    check.expect(capped == 3, "iteration cap exited " + std::to_string(capped));

    const int malformed = run_cli(
        "solve --imports " + arg("imports_ragged.csv") + " --tau " + arg("tau.csv"), dir / "f.txt");
    check.expect(malformed == 4, "malformed input exited " + std::to_string(malformed));

    std::filesystem::remove_all(dir);
    report("AC8", "CLI determinism and exit codes", check, "exit codes 0, 2, 3, 4");
}

}  // namespace

int main() {
    ac1();
    const auto instances = make_instances(500, 500);
    ac2_ac3_ac4(instances);
    ac5();
    ac6();
    ac7();
    ac8();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << '\n';
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
