#ifndef DPCOLOR_GRAPH_HPP
#define DPCOLOR_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dpcolor {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u;  // always u < v
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

/**
 * Simple undirected graph on vertices 0..n-1.
 *
 * Edges keep the order they were given in, with endpoints normalized so
 * that u < v. The edge id of an edge is its position in edges(). Adjacency
 * is built once in the constructor; the object is immutable afterwards.
 */
class Graph {
public:
    // Throws ValidationError on loops, duplicates, out-of-range endpoints,
    // or vertex_count < 1.
    Graph(int vertex_count, std::span<const std::pair<int, int>> edges);
    Graph(int vertex_count, std::initializer_list<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Incidence>& incident(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
    bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

    // Number of connected components.
    int component_count() const;
    bool is_connected() const { return component_count() == 1; }
    bool is_tree() const { return is_connected() && edge_count() == n_ - 1; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adj_;
};

Graph build_graph(int vertex_count, std::span<const std::pair<int, int>> edges);

enum class GraphFamily { cycle, path, complete, complete_bipartite };

// Canonical numbering: cycle and path are 0..n-1 in order; the cycle's
// closing edge {0, n-1} is the last edge. complete_bipartite(a, b) puts the
// a-side first (0..a-1) and the b-side after (a..a+b-1).
Graph standard_graph(GraphFamily kind, std::span<const int> params);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);

// G[U]; vertices renumbered by their rank in sorted U.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> subset);

/**
 * Cartesian product G □ H.
 *
 * Flat index of (u, v) is v * |V(G)| + u, so the copy of G lying over each
 * vertex v of H (a "fiber") is a contiguous block. Edge order: all fiber
 * edges (per v, in G's edge order), then for each edge of H and each u the
 * edge joining the two copies of u.
 */
class ProductGraph {
public:
    ProductGraph(Graph left, Graph right);

    const Graph& graph() const { return product_; }
    const Graph& left() const { return left_; }
    const Graph& right() const { return right_; }

    Vertex index(Vertex u, Vertex v) const { return v * left_.vertex_count() + u; }
    std::pair<Vertex, Vertex> pair_of(Vertex flat) const {
        return {flat % left_.vertex_count(), flat / left_.vertex_count()};
    }

private:
    Graph left_;
    Graph right_;
    Graph product_;
};

ProductGraph cartesian_product(const Graph& left, const Graph& right);

struct DegeneracyOrdering {
    std::vector<Vertex> ordering;
    int width = 0;  // col(G): each vertex has <= width-1 earlier neighbours
};

// Smallest-last ordering (repeatedly strip a minimum-degree vertex, lowest
// index first). width = degeneracy + 1.
DegeneracyOrdering coloring_number(const Graph& g);

// Largest number of earlier neighbours of any vertex under `ordering`.
int back_degree(const Graph& g, std::span<const Vertex> ordering);

}  // namespace dpcolor

#endif  // DPCOLOR_GRAPH_HPP
