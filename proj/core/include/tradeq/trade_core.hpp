#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tradeq/matrix.hpp"

namespace tradeq {

/// Ordered pair of country indices. For flows, origin exports to destination.
struct CountryPair {
    std::size_t origin = 0;
    std::size_t destination = 0;

    friend auto operator<=>(const CountryPair&, const CountryPair&) = default;
};

/// Pairwise export vectors between countries. A missing pair is a zero flow.
struct BilateralFlowSet {
    std::vector<std::string> countries;
    std::vector<std::string> goods;
    std::map<CountryPair, Vector> flows;

    [[nodiscard]] std::size_t country_count() const noexcept { return countries.size(); }
    [[nodiscard]] std::size_t good_count() const noexcept { return goods.size(); }
};

struct AggregatedTrade {
    ImportMatrix imports;
    ExportMatrix exports;
};

struct Violation {
    std::string check;
    std::size_t index = 0;
    double magnitude = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

inline constexpr double kDefaultConservationTolerance = 1e-9;

/// Sums bilateral flows into per-country export (B) and import (C) columns.
/// Throws DimensionMismatch for a flow vector of the wrong length or an
/// out-of-range country index, NegativeEntry for negative quantities and
/// SelfFlow for a nonzero diagonal flow.
AggregatedTrade aggregate_flows(const BilateralFlowSet& flows);

/// Per good k: |sum_i C(k,i) - sum_i B(k,i)| <= tol * max(1, sum_i C(k,i)).
ValidationReport validate_conservation(const ImportMatrix& imports, const ExportMatrix& exports,
                                       double tol = kDefaultConservationTolerance);

/// Every good must be imported somewhere: each row sum of C is > 0.
ValidationReport validate_positivity(const ImportMatrix& imports);

}  // namespace tradeq
