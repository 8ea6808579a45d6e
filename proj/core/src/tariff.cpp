#include "tradeq/tariff.hpp"

#include <cmath>
#include <string>

namespace tradeq {

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }

}  // namespace

void validate_factors(const std::map<CountryPair, Vector>& factors) {
    for (const auto& [pair, values] : factors) {
        for (Index k = 0; k < values.size(); ++k) {
            if (!in_unit_interval(values(k))) {
                throw Error(ErrorKind::InvalidReduction,
                            "factor for good " + std::to_string(k) + " on pair (" +
                                std::to_string(pair.origin) + "," +
                                std::to_string(pair.destination) + ") is outside (0, 1]");
            }
        }
    }
}

ReductionVector::ReductionVector(Vector values) : values_(std::move(values)) {
    for (Index k = 0; k < values_.size(); ++k) {
        if (!in_unit_interval(values_(k))) {
            throw Error(ErrorKind::InvalidReduction,
                        "reduction factor for good " + std::to_string(k) + " is outside (0, 1]");
        }
    }
}

ReductionVector compose(const ReductionVector& r, const ReductionVector& r2) {
    require_shape(r.size() == r2.size(), "reduction vectors differ in length");
    return ReductionVector(r.values().cwiseProduct(r2.values()));
}

ReductionVector collapse_reductions(const ReductionSchedule& schedule, double tol) {
    if (schedule.factors.empty()) {
        throw Error(ErrorKind::EmptyInput, "reduction schedule has no country pairs");
    }
    validate_factors(schedule.factors);
    const Vector& reference = schedule.factors.begin()->second;
    for (const auto& [pair, values] : schedule.factors) {
        require_shape(values.size() == reference.size(),
                      "reduction schedule vectors differ in length");
    }
    for (Index k = 0; k < reference.size(); ++k) {
        for (const auto& [pair, values] : schedule.factors) {
            if (std::abs(values(k) - reference(k)) > tol) {
                throw AsymmetricScheduleError(static_cast<std::size_t>(k), pair.origin,
                                              pair.destination, reference(k), values(k));
            }
        }
    }
    return ReductionVector(reference);
}

ScaledTrade apply_reduction(const ImportMatrix& imports, const ExportMatrix& exports,
                            const ReductionVector& r) {
    require_shape(imports.rows() == exports.rows() && imports.cols() == exports.cols(),
                  "import and export matrices differ in shape");
    require_shape(r.size() == imports.rows(), "reduction vector length differs from good count");
    const auto scale = r.values().asDiagonal();
    return {ImportMatrix(scale * imports.values()), ExportMatrix(scale * exports.values())};
}

PriceVector tariff_equilibrium(const PriceVector& p0, const ReductionVector& r) {
    require_shape(p0.size() == r.size(), "price and reduction vectors differ in length");
    return PriceVector::raw(p0.values().cwiseQuotient(r.values()));
}

Vector tariff_residual(const ImportMatrix& imports, const ExportMatrix& exports,
                       const ReductionVector& r, const PriceVector& prices) {
    const ScaledTrade scaled = apply_reduction(imports, exports, r);
    return clearing_residual(scaled.imports, scaled.exports, prices);
}

ValidationReport verify_tariff_solution(const ImportMatrix& imports, const ExportMatrix& exports,
                                        const ReductionVector& r, const PriceVector& prices,
                                        double tol) {
    const Vector residual = tariff_residual(imports, exports, r, prices);
    ValidationReport report;
    for (Index k = 0; k < residual.size(); ++k) {
        if (!(std::abs(residual(k)) <= tol)) {
            report.violations.push_back(
                {"tariff_clearing", static_cast<std::size_t>(k), std::abs(residual(k))});
        }
    }
    return report;
}

PriceImpact price_impact_report(const PriceVector& p0, const ReductionVector& r) {
    PriceVector raw = tariff_equilibrium(p0, r);
    PriceVector normalized = PriceVector::simplex(raw.values());
    Vector ratios = r.values().cwiseInverse();
    std::vector<PriceIncrease> increases;
    for (Index k = 0; k < r.size(); ++k) {
        if (r[k] < 1.0) increases.push_back({static_cast<std::size_t>(k), ratios(k)});
    }
    return {std::move(raw), std::move(normalized), std::move(ratios), std::move(increases)};
}

TariffOutcome evaluate_tariff(const ImportMatrix& imports, const ExportMatrix& exports,
                              const PriceVector& p0, const ReductionVector& r) {
    ScaledTrade scaled = apply_reduction(imports, exports, r);
    PriceImpact impact = price_impact_report(p0, r);
    Vector residual = clearing_residual(scaled.imports, scaled.exports, impact.raw_prices);
    Vector balance = balance_vector(scaled.imports, scaled.exports, impact.raw_prices);
    return {std::move(scaled.imports), std::move(scaled.exports), std::move(impact),
            std::move(residual), std::move(balance)};
}

}  // namespace tradeq
