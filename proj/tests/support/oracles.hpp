#pragma once

// Independent reference computations for the test suites. Everything here is
// written with plain loops over std::vector so it shares no code path with
// the Eigen-based library.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "tradeq/tradeq.hpp"

namespace tradeq::testing {

using Grid = std::vector<std::vector<double>>;

inline Grid to_grid(const Matrix& m) {
    Grid g(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) g[r][c] = m(r, c);
    return g;
}

inline Matrix to_matrix(const Grid& g) {
    Matrix m(static_cast<Index>(g.size()), g.empty() ? 0 : static_cast<Index>(g[0].size()));
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g[r].size(); ++c) m(r, c) = g[r][c];
    return m;
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
    Grid g;
    for (const auto& row : rows) g.emplace_back(row);
    return to_matrix(g);
}

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

inline Grid matmul(const Grid& a, const Grid& b) {
    Grid out(a.size(), std::vector<double>(b[0].size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

/// Brute force over every ordered pair (i, s): B(k, i) += e^{is}_k and
/// C(k, s) += e^{is}_k.
inline std::pair<Grid, Grid> aggregate_brute(const BilateralFlowSet& flows) {
    const std::size_t l = flows.country_count();
    const std::size_t n = flows.good_count();
    Grid imports(n, std::vector<double>(l, 0.0));
    Grid exports(n, std::vector<double>(l, 0.0));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t s = 0; s < l; ++s) {
            if (i == s) continue;
            const auto it = flows.flows.find({i, s});
            if (it == flows.flows.end()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                exports[k][i] += it->second(static_cast<Index>(k));
                imports[k][s] += it->second(static_cast<Index>(k));
            }
        }
    }
    return {imports, exports};
}

/// B1(k, s) = sum_i tau(k, i) C(i, s) / sum_s' C(i, s').
inline Grid mixing_brute(const Grid& c, const Grid& tau) {
    const std::size_t n = c.size();
    const std::size_t l = c[0].size();
    Grid out(l, std::vector<double>(l, 0.0));
    for (std::size_t k = 0; k < l; ++k) {
        for (std::size_t s = 0; s < l; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                double row = 0.0;
                for (std::size_t s2 = 0; s2 < l; ++s2) row += c[i][s2];
                out[k][s] += tau[k][i] * c[i][s] / row;
            }
        }
    }
    return out;
}

/// Spend <C_i, p>, revenue <b_i, p> and the clearing defect, by loops.
inline std::vector<double> clearing_brute(const Grid& c, const Grid& b, const std::vector<double>& p) {
    const std::size_t n = c.size();
    const std::size_t l = c[0].size();
    std::vector<double> spend(l, 0.0), revenue(l, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t s = 0; s < n; ++s) {
            spend[i] += c[s][i] * p[s];
            revenue[i] += b[s][i] * p[s];
        }
    }
    std::vector<double> residual(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < l; ++i) residual[k] += c[k][i] * revenue[i] / spend[i];
        for (std::size_t i = 0; i < l; ++i) residual[k] -= b[k][i];
    }
    return residual;
}

inline std::vector<double> balance_brute(const Grid& c, const Grid& b, const std::vector<double>& p) {
    std::vector<double> out(c[0].size(), 0.0);
    for (std::size_t i = 0; i < c[0].size(); ++i)
        for (std::size_t k = 0; k < c.size(); ++k) out[i] += (b[k][i] - c[k][i]) * p[k];
    return out;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

/// Strong connectivity by repeated boolean squaring of I + sign(M): after
/// ceil(log2 k) squarings entry (i, j) is true iff j is reachable from i.
inline bool strongly_connected_brute(const Grid& m) {
    const std::size_t k = m.size();
    if (k <= 1) return true;
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) reach[i][j] = (i == j) || m[i][j] > 0.0;
    for (std::size_t len = 1; len < k; len *= 2) {
        auto next = reach;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                bool any = false;
                for (std::size_t h = 0; h < k && !any; ++h) any = reach[i][h] && reach[h][j];
                next[i][j] = any;
            }
        reach = std::move(next);
    }
    for (const auto& row : reach)
        for (bool b : row)
            if (!b) return false;
    return true;
}

/// The two vertices are mutually reachable (same SCC), by the same closure.
inline std::vector<std::vector<bool>> reachability_brute(const Grid& m) {
    const std::size_t k = m.size();
    std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) reach[i][j] = (i == j) || m[i][j] > 0.0;
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (reach[i][h] && reach[h][j]) reach[i][j] = true;
    return reach;
}

struct RandomInstance {
    ImportMatrix imports;
    TauMatrix tau;
};

/// C entries uniform in (0.1, 10); tau strictly positive and row-stochastic.
inline RandomInstance random_instance(std::mt19937_64& rng, Index goods, Index countries) {
    std::uniform_real_distribution<double> quantity(0.1, 10.0);
    std::uniform_real_distribution<double> share(1e-3, 1.0);
    Matrix c(goods, countries);
    for (Index i = 0; i < c.size(); ++i) c(i) = quantity(rng);
    Matrix tau(countries, goods);
    for (Index i = 0; i < tau.size(); ++i) tau(i) = share(rng);
    for (Index k = 0; k < countries; ++k) tau.row(k) /= tau.row(k).sum();
    return {ImportMatrix(std::move(c)), normalize_tau(tau)};
}

inline Vector random_reduction(std::mt19937_64& rng, Index goods) {
    std::uniform_real_distribution<double> factor(0.1, 1.0);
    Vector r(goods);
    for (Index k = 0; k < goods; ++k) r(k) = factor(rng);
    return r;
}

}  // namespace tradeq::testing
