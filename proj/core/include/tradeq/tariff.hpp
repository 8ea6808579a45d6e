#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tradeq/equilibrium.hpp"
#include "tradeq/trade_core.hpp"

namespace tradeq {

/// Price factors t_k in (0, 1] a country applies to goods bought from a
/// target country. Carried as annotation only: nothing maps it to
/// reduction factors.
struct TariffSchedule {
    std::map<CountryPair, Vector> factors;
};

/// Flow reduction factors r_k in (0, 1] per country pair.
struct ReductionSchedule {
    std::map<CountryPair, Vector> factors;
};

/// Throws InvalidReduction if any factor lies outside (0, 1].
void validate_factors(const std::map<CountryPair, Vector>& factors);

/// Per-good reduction vector, 0 < r_k <= 1.
class ReductionVector {
public:
    /// Throws InvalidReduction unless every value is in (0, 1].
    explicit ReductionVector(Vector values);

    [[nodiscard]] const Vector& values() const noexcept { return values_; }
    [[nodiscard]] Index size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](Index i) const { return values_(i); }

private:
    Vector values_;
};

/// Componentwise product: applying r then r2 is the same as applying this.
ReductionVector compose(const ReductionVector& r, const ReductionVector& r2);

/// Extracts the common per-good factor shared by every pair. Throws
/// AsymmetricScheduleError at the first good where some pair differs from
/// the first pair by more than tol, EmptyInput for an empty schedule,
/// DimensionMismatch for vectors of unequal length and InvalidReduction for
/// factors outside (0, 1].
ReductionVector collapse_reductions(const ReductionSchedule& schedule, double tol);

struct ScaledTrade {
    ImportMatrix imports;
    ExportMatrix exports;
};

/// Scales row k of C and B by r_k.
ScaledTrade apply_reduction(const ImportMatrix& imports, const ExportMatrix& exports,
                            const ReductionVector& r);

/// p_i = p0_i / r_i, untouched by normalization.
PriceVector tariff_equilibrium(const PriceVector& p0, const ReductionVector& r);

/// Clearing defect of the reduced system at p:
/// sum_i r_k C(k, i) <r b_i, p> / <r C_i, p> - sum_s r_k B(k, s).
/// Throws ZeroSpend.
Vector tariff_residual(const ImportMatrix& imports, const ExportMatrix& exports,
                       const ReductionVector& r, const PriceVector& prices);

/// Passes iff ||tariff_residual||_inf <= tol. One violation per failing good.
ValidationReport verify_tariff_solution(const ImportMatrix& imports, const ExportMatrix& exports,
                                        const ReductionVector& r, const PriceVector& prices,
                                        double tol);

struct PriceIncrease {
    std::size_t good = 0;
    double factor = 1.0;
};

struct PriceImpact {
    PriceVector raw_prices;
    PriceVector normalized_prices;
    /// p_i / p0_i = 1 / r_i.
    Vector price_ratios;
    /// Goods with r_i < 1, in index order.
    std::vector<PriceIncrease> increases;
};

/// Raw prices never fall below p0; they rise exactly where r_i < 1.
PriceImpact price_impact_report(const PriceVector& p0, const ReductionVector& r);

struct TariffOutcome {
    ImportMatrix scaled_imports;
    ExportMatrix scaled_exports;
    PriceImpact impact;
    Vector residual;
    Vector scaled_balance;
};

/// Full scenario at the closed-form price p0 / r, with the reduced-system
/// residual and balances recomputed from the outputs.
TariffOutcome evaluate_tariff(const ImportMatrix& imports, const ExportMatrix& exports,
                              const PriceVector& p0, const ReductionVector& r);

}  // namespace tradeq
