#include "tradeq/structure_builder.hpp"

#include <cmath>
#include <string>

namespace tradeq {

ValidationReport validate_tau(const TauMatrix& tau) {
    ValidationReport report;
    for (Index k = 0; k < tau.rows(); ++k) {
        const auto row = tau.values().row(k);
        if ((row.array() < 0.0).any()) {
            report.violations.push_back(
                {"tau_nonnegative", static_cast<std::size_t>(k), -row.minCoeff()});
            continue;
        }
        const double gap = std::abs(row.sum() - 1.0);
        if (!(gap <= kTauRowTolerance)) {
            report.violations.push_back({"tau_row_sum", static_cast<std::size_t>(k), gap});
        }
    }
    return report;
}

TauMatrix normalize_tau(const Matrix& raw) {
    TauMatrix checked(raw);
    const ValidationReport report = validate_tau(checked);
    if (!report.passed()) {
        const Violation& v = report.violations.front();
        throw Error(ErrorKind::InvalidTau, "row " + std::to_string(v.index) +
                                               " of the allocation matrix sums to 1 +/- " +
                                               std::to_string(v.magnitude));
    }
    Matrix normalized = raw;
    for (Index k = 0; k < normalized.rows(); ++k) {
        normalized.row(k) /= normalized.row(k).sum();
    }
    return TauMatrix(std::move(normalized));
}

void require_compatible(const ImportMatrix& imports, const TauMatrix& tau) {
    require_shape(tau.rows() == imports.cols() && tau.cols() == imports.rows(),
                  "allocation matrix is " + std::to_string(tau.rows()) + "x" +
                      std::to_string(tau.cols()) + ", expected " +
                      std::to_string(imports.cols()) + "x" + std::to_string(imports.rows()) +
                      " (countries x goods)");
}

void require_positive_imports(const ImportMatrix& imports) {
    const ValidationReport report = validate_positivity(imports);
    if (!report.passed()) {
        throw Error(ErrorKind::PositivityViolation,
                    "good " + std::to_string(report.violations.front().index) +
                        " has zero world imports");
    }
}

void require_stochastic(const TauMatrix& tau) {
    const ValidationReport report = validate_tau(tau);
    if (!report.passed()) {
        const Violation& v = report.violations.front();
        throw Error(ErrorKind::InvalidTau, "allocation row " + std::to_string(v.index) +
                                               " fails " + v.check + " by " +
                                               std::to_string(v.magnitude));
    }
}

void require_irreducible(const GoodsCouplingMatrix& coupling) {
    IrreducibilityResult result = check_irreducible(coupling.values());
    if (!result.irreducible) {
        throw IrreducibilityError("goods coupling matrix t = C tau is decomposable",
                                  std::move(result.components));
    }
}

MixingMatrix build_mixing_matrix(const ImportMatrix& imports, const TauMatrix& tau) {
    require_compatible(imports, tau);
    require_positive_imports(imports);
    require_stochastic(tau);

    const Matrix& c = imports.values();
    const Vector world_imports = c.rowwise().sum();
    // Row i of C divided by its world total.
    const Matrix import_shares = world_imports.cwiseInverse().asDiagonal() * c;
    return MixingMatrix(tau.values() * import_shares);
}

GoodsCouplingMatrix build_goods_coupling(const ImportMatrix& imports, const TauMatrix& tau) {
    require_compatible(imports, tau);
    return GoodsCouplingMatrix(imports.values() * tau.values());
}

ExportMatrix build_ideal_exports(const ImportMatrix& imports, const TauMatrix& tau) {
    require_compatible(imports, tau);
    require_positive_imports(imports);
    require_stochastic(tau);
    const GoodsCouplingMatrix coupling = build_goods_coupling(imports, tau);
    require_irreducible(coupling);

    const Matrix& c = imports.values();
    const Vector world_imports = c.rowwise().sum();
    const Index n = c.rows();
    const Index l = c.cols();
    Matrix exports = Matrix::Zero(n, l);
    for (Index i = 0; i < n; ++i) {
        for (Index k = 0; k < l; ++k) {
            double sum = 0.0;
            for (Index j = 0; j < n; ++j) {
                sum += coupling(i, j) * c(j, k) / world_imports(j);
            }
            exports(i, k) = sum;
        }
    }
    return ExportMatrix(std::move(exports));
}

}  // namespace tradeq
