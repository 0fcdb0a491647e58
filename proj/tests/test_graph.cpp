#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dpcolor/error.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/random.hpp"

using namespace dpcolor;

namespace {

// Minimum over all orderings of (max back degree + 1).
int brute_col(const Graph& g) {
    std::vector<Vertex> p(g.vertex_count());
    std::iota(p.begin(), p.end(), 0);
    int best = g.vertex_count() + 1;
    do best = std::min(best, back_degree(g, p) + 1);
    while (std::next_permutation(p.begin(), p.end()));
    return best;
}

Graph random_graph(int n, SeededStream& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.below(2)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

}  // namespace

TEST_CASE("graph construction normalizes and rejects bad input") {
    Graph g(3, {{2, 0}, {1, 2}});
    CHECK(g.edge(0) == Edge{0, 2});
    CHECK(g.edge(1) == Edge{1, 2});
    CHECK(g.find_edge(2, 0) == 0);
    CHECK_FALSE(g.adjacent(0, 1));
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
    CHECK_THROWS_AS(Graph(0, {}), ValidationError);
}

TEST_CASE("standard families") {
    const Graph c = cycle_graph(5);
    CHECK(c.edge_count() == 5);
    CHECK(c.edges().back() == Edge{0, 4});
    CHECK(path_graph(4).is_tree());
    CHECK(complete_graph(4).edge_count() == 6);
    const Graph k = complete_bipartite_graph(2, 3);
    CHECK(k.edge_count() == 6);
    CHECK(k.edge(0) == Edge{0, 2});
    CHECK(k.edge(3) == Edge{1, 2});
    CHECK(complete_graph(1).edge_count() == 0);
    CHECK_THROWS_AS(cycle_graph(2), ValidationError);
    const std::vector<int> params{2, 3};
    CHECK(standard_graph(GraphFamily::complete_bipartite, params) == k);
}

TEST_CASE("components and induced subgraphs") {
    Graph g(5, {{0, 1}, {3, 4}});
    CHECK(g.component_count() == 3);
    const std::vector<Vertex> sub{4, 3, 1};
    const Graph h = induced_subgraph(g, sub);
    CHECK(h.vertex_count() == 3);
    CHECK(h.edge_count() == 1);
    CHECK(h.edge(0) == Edge{1, 2});
}

TEST_CASE("cartesian product numbering and edges") {
    ProductGraph pg(path_graph(2), cycle_graph(3));
    const Graph& m = pg.graph();
    CHECK(m.vertex_count() == 6);
    CHECK(m.edge_count() == 3 * 1 + 3 * 2);
    CHECK(pg.index(1, 2) == 5);
    CHECK(pg.pair_of(5) == std::pair<Vertex, Vertex>{1, 2});
    // Fiber edges first, then one copy of each right edge per left vertex.
    CHECK(m.edge(0) == Edge{0, 1});
    CHECK(m.edge(2) == Edge{4, 5});
    CHECK(m.edge(3) == Edge{0, 2});
    CHECK(m.edge(4) == Edge{1, 3});
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = a + 1; b < 6; ++b) {
            auto [u1, v1] = pg.pair_of(a);
            auto [u2, v2] = pg.pair_of(b);
            const bool expected = (u1 == u2 && pg.right().adjacent(v1, v2)) || (v1 == v2 && pg.left().adjacent(u1, u2));
            CHECK(m.adjacent(a, b) == expected);
        }
}

TEST_CASE("coloring number matches brute force") {
    CHECK(coloring_number(cycle_graph(6)).width == 3);
    CHECK(coloring_number(complete_graph(5)).width == 5);
    CHECK(coloring_number(path_graph(5)).width == 2);
    CHECK(coloring_number(complete_bipartite_graph(2, 4)).width == 3);
    CHECK(coloring_number(complete_graph(1)).width == 1);
    SeededStream rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph g = random_graph(2 + trial % 6, rng);
        const auto d = coloring_number(g);
        CHECK(d.width == brute_col(g));
        CHECK(back_degree(g, d.ordering) + 1 == d.width);
        std::vector<Vertex> sorted = d.ordering;
        std::sort(sorted.begin(), sorted.end());
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(sorted[v] == v);
    }
}
