#pragma once

#include <cstddef>

#include "tradeq/matrix.hpp"
#include "tradeq/structure_builder.hpp"
#include "tradeq/trade_core.hpp"

namespace tradeq {

enum class Normalization { Simplex, Raw };

inline constexpr double kSimplexTolerance = 1e-12;

/// Strictly positive price per unit of each good. Simplex prices sum to 1.
class PriceVector {
public:
    /// Throws InvalidPrice unless every value is finite and > 0, and, for
    /// Simplex, the values sum to 1 within kSimplexTolerance.
    PriceVector(Vector values, Normalization normalization);

    /// Divides by the sum.
    static PriceVector simplex(const Vector& values);
    static PriceVector raw(Vector values) { return {std::move(values), Normalization::Raw}; }

    [[nodiscard]] const Vector& values() const noexcept { return values_; }
    [[nodiscard]] Normalization normalization() const noexcept { return normalization_; }
    [[nodiscard]] Index size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](Index i) const { return values_(i); }

private:
    Vector values_;
    Normalization normalization_;
};

struct SolveOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 100000;
};

struct EquilibriumSolution {
    PriceVector prices;
    double lambda = 0.0;
    /// d_k = <C_k, p0>, in value units of the simplex-normalized prices.
    Vector country_values;
    std::size_t iterations = 0;
    double step_delta = 0.0;
    Vector clearing_residual;
    Vector balance_residual;

    [[nodiscard]] Vector country_shares() const { return country_values / country_values.sum(); }
};

/// F(j, i) = t(j, i) / sum_s C(i, s). F has the zero pattern of t.
PriceMapMatrix build_price_map(const ImportMatrix& imports, const TauMatrix& tau);

/// Equilibrium price vector of the ideal structure built from (C, tau).
///
/// Iterates p <- normalize((I + F^T) p) from the uniform simplex point until
/// the infinity norm of successive iterates is <= opts.tolerance. With t
/// irreducible, I + F^T is primitive and the iteration converges to its
/// Perron vector, which is the fixed point of the normalized map
/// H(p) = (p + F^T p) / (1 + sum(F^T p)) on the simplex.
///
/// lambda is sum_i (F^T p0)_i. The residual vectors are recomputed from the
/// final prices against build_ideal_exports(C, tau).
///
/// Throws the preconditions of build_ideal_exports, ConvergenceError when
/// max_iterations is exhausted, and InvalidConfig for a non-positive
/// tolerance or zero iteration budget.
EquilibriumSolution solve_prices(const ImportMatrix& imports, const TauMatrix& tau,
                                 const SolveOptions& opts = {});

/// d_k = sum_u p_u C(u, k).
Vector country_values(const ImportMatrix& imports, const PriceVector& prices);

/// Passes iff ||B1^T d - d||_inf <= tol * max(1, ||d||_inf).
ValidationReport verify_stationarity(const MixingMatrix& mixing, const Vector& d, double tol);

/// residual(k) = sum_i C(k, i) <b_i, p> / <C_i, p> - sum_i B(k, i).
/// Throws ZeroSpend when some country has <C_i, p> = 0.
Vector clearing_residual(const ImportMatrix& imports, const ExportMatrix& exports,
                         const PriceVector& prices);

/// balance(i) = <b_i, p> - <C_i, p>.
Vector balance_vector(const ImportMatrix& imports, const ExportMatrix& exports,
                      const PriceVector& prices);

/// Country-space route: simplex-normalized d with B1^T d = d, by iterating
/// d <- normalize((I + B1^T) d) from the uniform point. Throws
/// ConvergenceError.
Vector stationary_country_values(const MixingMatrix& mixing, const SolveOptions& opts = {});

/// Recovers prices from stationary country values:
/// p_i proportional to sum_k d_k tau(k, i) / sum_s C(i, s), simplex-normalized.
PriceVector prices_from_country_values(const ImportMatrix& imports, const TauMatrix& tau,
                                       const Vector& d);

}  // namespace tradeq
