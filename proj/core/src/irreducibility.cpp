#include "tradeq/irreducibility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <string>

namespace tradeq {

namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

struct Frame {
    std::size_t vertex;
    std::size_t next_edge;
};

/// Topological order of the condensation; among ready components the one
/// holding the smallest vertex goes first, so the order depends only on the
/// graph and not on traversal details.
Components condensation_order(const Adjacency& graph, Components components) {
    std::vector<std::size_t> component_of(graph.size());
    for (std::size_t c = 0; c < components.size(); ++c)
        for (std::size_t v : components[c]) component_of[v] = c;

    std::vector<std::set<std::size_t>> successors(components.size());
    std::vector<std::size_t> in_degree(components.size(), 0);
    for (std::size_t v = 0; v < graph.size(); ++v) {
        for (std::size_t w : graph[v]) {
            const std::size_t from = component_of[v];
            const std::size_t to = component_of[w];
            if (from != to && successors[from].insert(to).second) ++in_degree[to];
        }
    }

    using Entry = std::pair<std::size_t, std::size_t>;  // smallest vertex, component
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    for (std::size_t c = 0; c < components.size(); ++c)
        if (in_degree[c] == 0) ready.emplace(components[c].front(), c);

    Components ordered;
    ordered.reserve(components.size());
    while (!ready.empty()) {
        const std::size_t c = ready.top().second;
        ready.pop();
        for (std::size_t next : successors[c])
            if (--in_degree[next] == 0) ready.emplace(components[next].front(), next);
        ordered.push_back(std::move(components[c]));
    }
    return ordered;
}

}  // namespace

// Tarjan's algorithm with an explicit call stack.
Components strongly_connected_components(const Adjacency& graph) {
    const std::size_t count = graph.size();
    std::vector<std::size_t> order(count, kUnvisited);
    std::vector<std::size_t> low(count, 0);
    std::vector<bool> on_stack(count, false);
    std::vector<std::size_t> stack;
    std::vector<Frame> calls;
    std::size_t counter = 0;
    Components components;

    for (std::size_t root = 0; root < count; ++root) {
        if (order[root] != kUnvisited) continue;
        calls.push_back({root, 0});
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!calls.empty()) {
            Frame& frame = calls.back();
            const std::size_t v = frame.vertex;
            if (frame.next_edge < graph[v].size()) {
                const std::size_t w = graph[v][frame.next_edge++];
                if (order[w] == kUnvisited) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
                continue;
            }
            if (low[v] == order[v]) {
                std::vector<std::size_t> component;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            calls.pop_back();
            if (!calls.empty()) {
                const std::size_t parent = calls.back().vertex;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return condensation_order(graph, std::move(components));
}

IrreducibilityResult check_irreducible(const Matrix& m) {
    require_shape(m.rows() == m.cols(), "irreducibility is defined for square matrices only");
    const auto size = static_cast<std::size_t>(m.rows());
    Adjacency graph(size);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw Error(ErrorKind::NegativeEntry,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is negative or not finite");
            }
            if (v > 0.0) graph[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(j));
        }
    }
    IrreducibilityResult result;
    result.components = strongly_connected_components(graph);
    result.irreducible = result.components.size() <= 1;
    return result;
}

}  // namespace tradeq
