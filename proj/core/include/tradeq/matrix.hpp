#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "tradeq/errors.hpp"

namespace tradeq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense matrix with every entry finite and >= 0. The tag makes import,
/// export, allocation and derived matrices distinct types that share one
/// representation.
template <class Tag>
class NonNegativeMatrix {
public:
    NonNegativeMatrix() = default;

    explicit NonNegativeMatrix(Matrix values) : values_(std::move(values)) {
        for (Index r = 0; r < values_.rows(); ++r) {
            for (Index c = 0; c < values_.cols(); ++c) {
                const double v = values_(r, c);
                if (!std::isfinite(v) || v < 0.0) {
                    throw Error(ErrorKind::NegativeEntry,
                                std::string(Tag::name) + " entry (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") = " + std::to_string(v) +
                                    " is not a finite nonnegative number");
                }
            }
        }
    }

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] Index rows() const noexcept { return values_.rows(); }
    [[nodiscard]] Index cols() const noexcept { return values_.cols(); }
    [[nodiscard]] double operator()(Index r, Index c) const { return values_(r, c); }

private:
    Matrix values_;
};

// Goods x countries.
struct ImportTag { static constexpr const char* name = "import matrix"; };
struct ExportTag { static constexpr const char* name = "export matrix"; };
// Countries x goods.
struct TauTag { static constexpr const char* name = "allocation matrix"; };
// Countries x countries.
struct MixingTag { static constexpr const char* name = "mixing matrix"; };
// Goods x goods.
struct CouplingTag { static constexpr const char* name = "goods coupling matrix"; };
struct PriceMapTag { static constexpr const char* name = "price map matrix"; };

/// C: entry (k, i) is the quantity of good k imported by country i.
using ImportMatrix = NonNegativeMatrix<ImportTag>;
/// B: entry (k, i) is the quantity of good k exported by country i.
using ExportMatrix = NonNegativeMatrix<ExportTag>;
/// tau: entry (k, j) is the share of country k's import value allocated to good j.
using TauMatrix = NonNegativeMatrix<TauTag>;
using MixingMatrix = NonNegativeMatrix<MixingTag>;
using GoodsCouplingMatrix = NonNegativeMatrix<CouplingTag>;
using PriceMapMatrix = NonNegativeMatrix<PriceMapTag>;

inline void require_shape(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

}  // namespace tradeq
