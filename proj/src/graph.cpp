#include "dpcolor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

std::vector<std::pair<int, int>> product_edges(const Graph& left, const Graph& right) {
    const int n = left.vertex_count();
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(right.vertex_count()) * left.edge_count() +
                static_cast<std::size_t>(n) * right.edge_count());
    for (Vertex v = 0; v < right.vertex_count(); ++v)
        for (const Edge& e : left.edges()) out.emplace_back(v * n + e.u, v * n + e.v);
    for (const Edge& f : right.edges())
        for (Vertex u = 0; u < n; ++u) out.emplace_back(f.u * n + u, f.v * n + u);
    return out;
}

}  // namespace

Graph::Graph(int vertex_count, std::span<const std::pair<int, int>> edges)
    : n_(vertex_count), adj_(vertex_count > 0 ? vertex_count : 0) {
    if (vertex_count < 1) throw ValidationError("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            throw ValidationError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} out of range for n=" + std::to_string(n_));
        if (a == b) throw ValidationError("loop at vertex " + std::to_string(a));
        if (a > b) std::swap(a, b);
        if (!seen.emplace(a, b).second)
            throw ValidationError("duplicate edge {" + std::to_string(a) + "," +
                                  std::to_string(b) + "}");
        const EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.push_back({a, b});
        adj_[a].push_back({b, id});
        adj_[b].push_back({a, id});
    }
}

Graph::Graph(int vertex_count, std::initializer_list<std::pair<int, int>> edges)
    : Graph(vertex_count, std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
    const auto& shorter = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    const Vertex other = adj_[a].size() <= adj_[b].size() ? b : a;
    for (const Incidence& inc : shorter)
        if (inc.neighbor == other) return inc.edge;
    return std::nullopt;
}

int Graph::component_count() const {
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack;
    int components = 0;
    for (Vertex s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (const Incidence& inc : adj_[x])
                if (!seen[inc.neighbor]) {
                    seen[inc.neighbor] = 1;
                    stack.push_back(inc.neighbor);
                }
        }
    }
    return components;
}

Graph build_graph(int vertex_count, std::span<const std::pair<int, int>> edges) {
    return Graph(vertex_count, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw ValidationError("cycle needs n >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

Graph path_graph(int n) {
    if (n < 1) throw ValidationError("path needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

Graph complete_graph(int n) {
    if (n < 1) throw ValidationError("complete graph needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

Graph complete_bipartite_graph(int a, int b) {
    if (a < 0 || b < 0 || a + b < 1) throw ValidationError("complete bipartite needs a, b >= 0, a+b >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, e);
}

Graph standard_graph(GraphFamily kind, std::span<const int> params) {
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw ValidationError("expected " + std::to_string(count) + " parameter(s)");
    };
    switch (kind) {
        case GraphFamily::cycle: need(1); return cycle_graph(params[0]);
        case GraphFamily::path: need(1); return path_graph(params[0]);
        case GraphFamily::complete: need(1); return complete_graph(params[0]);
        case GraphFamily::complete_bipartite: need(2); return complete_bipartite_graph(params[0], params[1]);
    }
    throw ValidationError("unknown graph family");
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
    std::vector<Vertex> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) throw ValidationError("induced subgraph of empty vertex set");
    std::vector<int> rank(g.vertex_count(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= g.vertex_count())
            throw ValidationError("subset vertex out of range");
        rank[sorted[i]] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> e;
    for (const Edge& ed : g.edges())
        if (rank[ed.u] >= 0 && rank[ed.v] >= 0) e.emplace_back(rank[ed.u], rank[ed.v]);
    return Graph(static_cast<int>(sorted.size()), e);
}

ProductGraph::ProductGraph(Graph left, Graph right)
    : left_(std::move(left)),
      right_(std::move(right)),
      product_(left_.vertex_count() * right_.vertex_count(), product_edges(left_, right_)) {}

ProductGraph cartesian_product(const Graph& left, const Graph& right) {
    return ProductGraph(left, right);
}

DegeneracyOrdering coloring_number(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);

    std::vector<Vertex> removal;
    removal.reserve(n);
    int degeneracy = 0;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
        degeneracy = std::max(degeneracy, deg[best]);
        removed[best] = 1;
        removal.push_back(best);
        for (const Incidence& inc : g.incident(best))
            if (!removed[inc.neighbor]) --deg[inc.neighbor];
    }
    // A vertex removed at minimum degree d has d neighbours removed later,
    // so reversing the removal order bounds every back-degree by d.
    std::reverse(removal.begin(), removal.end());
    return {std::move(removal), degeneracy + 1};
}

int back_degree(const Graph& g, std::span<const Vertex> ordering) {
    std::vector<int> pos(g.vertex_count(), -1);
    for (std::size_t i = 0; i < ordering.size(); ++i) pos[ordering[i]] = static_cast<int>(i);
    int worst = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        int earlier = 0;
        for (const Incidence& inc : g.incident(v))
            if (pos[inc.neighbor] < pos[v]) ++earlier;
        worst = std::max(worst, earlier);
    }
    return worst;
}

}  // namespace dpcolor
