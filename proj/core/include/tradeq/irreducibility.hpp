#pragma once

#include <cstddef>
#include <vector>

#include "tradeq/errors.hpp"
#include "tradeq/matrix.hpp"

namespace tradeq {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Strongly connected components of a directed graph, in topological order
/// of the condensation (a component precedes every component it reaches).
/// Unordered components are listed by their smallest vertex.
/// Vertices inside a component are sorted ascending.
Components strongly_connected_components(const Adjacency& graph);

struct IrreducibilityResult {
    bool irreducible = false;
    Components components;
};

/// A nonnegative square matrix is irreducible iff the graph with an edge
/// i -> j for every entry M(i, j) > 0 is strongly connected. There is no
/// epsilon: round tiny noise to zero before calling. A 1x1 matrix is
/// irreducible.
///
/// Throws DimensionMismatch for a non-square matrix and NegativeEntry for a
/// negative or non-finite entry.
IrreducibilityResult check_irreducible(const Matrix& m);

}  // namespace tradeq
