#include "tradeq/trade_core.hpp"

#include <algorithm>
#include <cmath>

namespace tradeq {

AggregatedTrade aggregate_flows(const BilateralFlowSet& flows) {
    const auto l = static_cast<Index>(flows.country_count());
    const auto n = static_cast<Index>(flows.good_count());
    require_shape(l >= 2, "a flow set needs at least two countries");
    require_shape(n >= 1, "a flow set needs at least one good");

    Matrix exports = Matrix::Zero(n, l);
    Matrix imports = Matrix::Zero(n, l);
    for (const auto& [pair, quantities] : flows.flows) {
        require_shape(pair.origin < flows.country_count() &&
                          pair.destination < flows.country_count(),
                      "flow references an unknown country index");
        require_shape(quantities.size() == n,
                      "flow vector has length " + std::to_string(quantities.size()) +
                          ", expected " + std::to_string(n));
        if ((quantities.array() < 0.0).any() || !quantities.allFinite()) {
            throw Error(ErrorKind::NegativeEntry, "flow quantities must be finite and >= 0");
        }
        if (pair.origin == pair.destination) {
            if ((quantities.array() != 0.0).any()) {
                throw Error(ErrorKind::SelfFlow,
                            "country " + flows.countries[pair.origin] + " trades with itself");
            }
            continue;
        }
        const auto exporter = static_cast<Index>(pair.origin);
        const auto importer = static_cast<Index>(pair.destination);
        exports.col(exporter) += quantities;
        imports.col(importer) += quantities;
    }
    return {ImportMatrix(std::move(imports)), ExportMatrix(std::move(exports))};
}

ValidationReport validate_conservation(const ImportMatrix& imports, const ExportMatrix& exports,
                                       double tol) {
    require_shape(imports.rows() == exports.rows() && imports.cols() == exports.cols(),
                  "import and export matrices differ in shape");
    ValidationReport report;
    for (Index k = 0; k < imports.rows(); ++k) {
        const double world_imports = imports.values().row(k).sum();
        const double world_exports = exports.values().row(k).sum();
        const double gap = std::abs(world_imports - world_exports);
        if (gap > tol * std::max(1.0, world_imports)) {
            report.violations.push_back({"conservation", static_cast<std::size_t>(k), gap});
        }
    }
    return report;
}

ValidationReport validate_positivity(const ImportMatrix& imports) {
    ValidationReport report;
    for (Index k = 0; k < imports.rows(); ++k) {
        const double world_imports = imports.values().row(k).sum();
        if (!(world_imports > 0.0)) {
            report.violations.push_back({"positivity", static_cast<std::size_t>(k), world_imports});
        }
    }
    return report;
}

}  // namespace tradeq
