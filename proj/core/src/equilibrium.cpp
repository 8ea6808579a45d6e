#include "tradeq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tradeq {

PriceVector::PriceVector(Vector values, Normalization normalization)
    : values_(std::move(values)), normalization_(normalization) {
    if (values_.size() == 0) throw Error(ErrorKind::InvalidPrice, "price vector is empty");
    for (Index i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_(i)) || !(values_(i) > 0.0)) {
            throw Error(ErrorKind::InvalidPrice,
                        "price of good " + std::to_string(i) + " is not strictly positive");
        }
    }
    if (normalization_ == Normalization::Simplex &&
        std::abs(values_.sum() - 1.0) > kSimplexTolerance) {
        throw Error(ErrorKind::InvalidPrice, "simplex prices must sum to 1");
    }
}

PriceVector PriceVector::simplex(const Vector& values) {
    return {values / values.sum(), Normalization::Simplex};
}

PriceMapMatrix build_price_map(const ImportMatrix& imports, const TauMatrix& tau) {
    require_compatible(imports, tau);
    require_positive_imports(imports);
    require_stochastic(tau);
    const Vector world_imports = imports.values().rowwise().sum();
    const Matrix coupling = imports.values() * tau.values();
    // Column i scaled by 1 / (world imports of good i).
    return PriceMapMatrix(coupling * world_imports.cwiseInverse().asDiagonal());
}

namespace {

void require_options(const SolveOptions& opts) {
    if (!(opts.tolerance > 0.0) || opts.max_iterations == 0) {
        throw Error(ErrorKind::InvalidConfig, "tolerance must be > 0 and max_iterations >= 1");
    }
}

struct PowerResult {
    Vector vector;
    std::size_t iterations = 0;
    double step_delta = 0.0;
};

// Power iteration of I + M on the simplex, starting from the uniform point.
PowerResult shifted_power_iteration(const Matrix& m, const SolveOptions& opts) {
    const Index size = m.rows();
    PowerResult result;
    result.vector = Vector::Constant(size, 1.0 / static_cast<double>(size));
    if (size == 1) return result;

    Vector next(size);
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        next.noalias() = m * result.vector;
        next += result.vector;
        next /= next.sum();
        result.step_delta = (next - result.vector).lpNorm<Eigen::Infinity>();
        result.vector.swap(next);
        result.iterations = it;
        if (result.step_delta <= opts.tolerance) return result;
    }
    throw ConvergenceError(result.iterations, result.step_delta);
}

}  // namespace

EquilibriumSolution solve_prices(const ImportMatrix& imports, const TauMatrix& tau,
                                 const SolveOptions& opts) {
    require_options(opts);
    const ExportMatrix exports = build_ideal_exports(imports, tau);
    const PriceMapMatrix price_map = build_price_map(imports, tau);
    const Matrix map_transposed = price_map.values().transpose();

    const PowerResult power = shifted_power_iteration(map_transposed, opts);
    PriceVector prices = PriceVector::simplex(power.vector);

    const double lambda = (map_transposed * prices.values()).sum();
    Vector values = country_values(imports, prices);
    Vector clearing = clearing_residual(imports, exports, prices);
    Vector balance = balance_vector(imports, exports, prices);
    return EquilibriumSolution{
        .prices = std::move(prices),
        .lambda = lambda,
        .country_values = std::move(values),
        .iterations = power.iterations,
        .step_delta = power.step_delta,
        .clearing_residual = std::move(clearing),
        .balance_residual = std::move(balance),
    };
}

Vector country_values(const ImportMatrix& imports, const PriceVector& prices) {
    require_shape(prices.size() == imports.rows(), "price vector length differs from good count");
    return imports.values().transpose() * prices.values();
}

ValidationReport verify_stationarity(const MixingMatrix& mixing, const Vector& d, double tol) {
    require_shape(mixing.rows() == mixing.cols() && mixing.rows() == d.size(),
                  "mixing matrix and country vector differ in size");
    ValidationReport report;
    const Vector defect = mixing.values().transpose() * d - d;
    const double scale = std::max(1.0, d.lpNorm<Eigen::Infinity>());
    for (Index i = 0; i < defect.size(); ++i) {
        if (!(std::abs(defect(i)) <= tol * scale)) {
            report.violations.push_back(
                {"stationarity", static_cast<std::size_t>(i), std::abs(defect(i))});
        }
    }
    return report;
}

Vector clearing_residual(const ImportMatrix& imports, const ExportMatrix& exports,
                         const PriceVector& prices) {
    require_shape(imports.rows() == exports.rows() && imports.cols() == exports.cols(),
                  "import and export matrices differ in shape");
    require_shape(prices.size() == imports.rows(), "price vector length differs from good count");
    const Vector spend = imports.values().transpose() * prices.values();
    const Vector revenue = exports.values().transpose() * prices.values();
    for (Index i = 0; i < spend.size(); ++i) {
        if (!(spend(i) > 0.0)) {
            throw Error(ErrorKind::ZeroSpend,
                        "country " + std::to_string(i) + " has zero import value at these prices");
        }
    }
    const Vector ratio = revenue.cwiseQuotient(spend);
    return imports.values() * ratio - exports.values().rowwise().sum();
}

Vector balance_vector(const ImportMatrix& imports, const ExportMatrix& exports,
                      const PriceVector& prices) {
    require_shape(imports.rows() == exports.rows() && imports.cols() == exports.cols(),
                  "import and export matrices differ in shape");
    require_shape(prices.size() == imports.rows(), "price vector length differs from good count");
    return (exports.values() - imports.values()).transpose() * prices.values();
}

Vector stationary_country_values(const MixingMatrix& mixing, const SolveOptions& opts) {
    require_options(opts);
    require_shape(mixing.rows() == mixing.cols() && mixing.rows() > 0,
                  "mixing matrix must be square and nonempty");
    return shifted_power_iteration(mixing.values().transpose(), opts).vector;
}

PriceVector prices_from_country_values(const ImportMatrix& imports, const TauMatrix& tau,
                                       const Vector& d) {
    require_compatible(imports, tau);
    require_shape(d.size() == imports.cols(), "country vector length differs from country count");
    const Vector world_imports = imports.values().rowwise().sum();
    const Vector allocated = tau.values().transpose() * d;
    return PriceVector::simplex(allocated.cwiseQuotient(world_imports));
}

}  // namespace tradeq
