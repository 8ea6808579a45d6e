#pragma once

#include "tradeq/irreducibility.hpp"
#include "tradeq/matrix.hpp"
#include "tradeq/trade_core.hpp"

namespace tradeq {

/// Row sums of an allocation matrix must equal 1 within this bound.
inline constexpr double kTauRowTolerance = 1e-12;

/// Passes iff every row of tau sums to 1 within kTauRowTolerance and all
/// entries are >= 0. Violation index is the offending row; magnitude is
/// |row sum - 1|.
ValidationReport validate_tau(const TauMatrix& tau);

/// Ingests a raw allocation grid: rows within kTauRowTolerance of 1 are
/// divided by their sum so they are exactly stochastic. Throws InvalidTau
/// for larger deviations and NegativeEntry for negative entries.
TauMatrix normalize_tau(const Matrix& raw);

/// B1(k, s) = sum_i tau(k, i) C(i, s) / sum_s' C(i, s'). The result is
/// l x l and row-stochastic.
///
/// Throws DimensionMismatch unless tau is l x n for C of shape n x l,
/// PositivityViolation if some good has zero world imports, and InvalidTau
/// if tau is not row-stochastic.
MixingMatrix build_mixing_matrix(const ImportMatrix& imports, const TauMatrix& tau);

/// t = C tau (n x n).
GoodsCouplingMatrix build_goods_coupling(const ImportMatrix& imports, const TauMatrix& tau);

/// Ideal export structure B(i, k) = sum_j t(i, j) C(j, k) / sum_r C(j, r).
/// At any equilibrium price of (C, tau) every country's export value equals
/// its import value.
///
/// Throws PositivityViolation, InvalidTau, DimensionMismatch, and
/// IrreducibilityError (with the SCC diagnostic of t) when t is decomposable.
ExportMatrix build_ideal_exports(const ImportMatrix& imports, const TauMatrix& tau);

// Precondition helpers shared with the solver; each throws the matching error.
void require_compatible(const ImportMatrix& imports, const TauMatrix& tau);
void require_positive_imports(const ImportMatrix& imports);
void require_stochastic(const TauMatrix& tau);
void require_irreducible(const GoodsCouplingMatrix& coupling);

}  // namespace tradeq
