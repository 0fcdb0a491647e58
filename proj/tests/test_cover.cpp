#include <doctest.h>

#include "dpcolor/error.hpp"
#include "dpcolor/random.hpp"
#include "dpcolor/solver.hpp"

using namespace dpcolor;

namespace {

Relabeling random_relabeling(const Cover& c, SeededStream& rng) {
    Relabeling r;
    for (Vertex v = 0; v < c.vertex_count(); ++v) r.perms.push_back(rng.permutation(c.list_size(v)));
    return r;
}

bool all_identity_except(const Cover& c, std::optional<EdgeId> skip) {
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        bool id = true;
        for (std::size_t i = 0; i < c.link(e).size(); ++i)
            id = id && c.link(e)[i] == IndexPair{static_cast<int>(i), static_cast<int>(i)};
        id = id && static_cast<int>(c.link(e).size()) == c.list_size(c.base().edge(e).u);
        if ((e == skip) == id) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validation reports malformed matchings") {
    const Graph g = path_graph(2);
    CHECK(validate_cover(Cover(g, {2, 2}, {{{0, 1}, {1, 0}}})).empty());
    CHECK_FALSE(validate_cover(Cover(g, {2, 2}, {{{0, 1}, {1, 1}}})).empty());
    CHECK_FALSE(validate_cover(Cover(g, {2, 2}, {{{0, 2}}})).empty());
    CHECK_THROWS_AS(require_valid(Cover(g, {2, 2}, {{{0, 0}, {0, 1}}})), ValidationError);
    CHECK_THROWS_AS(Cover(g, {2}, {{}}), ValidationError);
}

TEST_CASE("links are stored sorted so equality is structural") {
    const Graph g = path_graph(2);
    CHECK(Cover(g, {2, 2}, {{{1, 0}, {0, 1}}}) == Cover(g, {2, 2}, {{{0, 1}, {1, 0}}}));
    const Cover c(g, {3, 3}, {{{2, 0}}});
    CHECK(c.partner(0, 0, 2) == 0);
    CHECK(c.partner(0, 1, 0) == 2);
    CHECK(c.partner(0, 1, 1) == -1);
    CHECK_FALSE(c.is_full());
    const Cover full = full_completion(c);
    CHECK(full.is_full());
    CHECK(full.link(0) == Matching{{0, 1}, {1, 2}, {2, 0}});
}

TEST_CASE("relabeling round trip preserves coloring counts") {
    SeededStream rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Cover c = random_full_cover(cycle_graph(3 + trial % 4), 3, rng);
        const Relabeling r = random_relabeling(c, rng);
        const Cover d = relabel(c, r);
        CHECK(relabel(d, r.inverse()) == c);
        CHECK(count_colorings_backtracking(d) == count_colorings_backtracking(c));
    }
    CHECK_THROWS_AS(relabel(canonical_cover(path_graph(2), 2), Relabeling{{{0, 0}, {0, 1}}}), ValidationError);
}

TEST_CASE("canonical detection") {
    SeededStream rng(5);
    for (int n = 3; n <= 6; ++n) {
        const Cover canon = canonical_cover(cycle_graph(n), 3);
        const Cover hidden = relabel(canon, random_relabeling(canon, rng));
        const auto w = detect_canonical(hidden);
        REQUIRE(w);
        CHECK(w->kind == LabelingKind::canonical);
        CHECK(relabel(hidden, w->relabeling) == canon);
        const Cover tw = n % 2 == 0 ? make_twister(n / 2, 3) : canonical_cover(cycle_graph(n), 3);
        if (n % 2 == 0) CHECK_FALSE(detect_canonical(tw));
    }
    // Trees are always canonical.
    const Cover tree = random_full_cover(path_graph(5), 4, rng);
    const auto w = detect_canonical(tree);
    REQUIRE(w);
    CHECK(all_identity_except(relabel(tree, w->relabeling), std::nullopt));
    // Not full, not uniform.
    CHECK_FALSE(detect_canonical(Cover(path_graph(2), {2, 2}, {{{0, 0}}})));
    CHECK_FALSE(detect_canonical(Cover(path_graph(2), {2, 3})));
}

TEST_CASE("twisted-canonical detection") {
    SeededStream rng(11);
    const Cover tw = make_twister(3, 3);
    const Cover hidden = relabel(tw, random_relabeling(tw, rng));
    const auto w = detect_twisted_canonical(hidden);
    REQUIRE(w);
    CHECK(w->kind == LabelingKind::twisted_canonical);
    REQUIRE(w->twist_edge);
    CHECK(all_identity_except(relabel(hidden, w->relabeling), w->twist_edge));
    CHECK_FALSE(detect_twisted_canonical(canonical_cover(cycle_graph(4), 3)));
    // A path: the twist sits on the first edge and becomes the shift.
    const Cover p = random_full_cover(path_graph(4), 3, rng);
    const auto pw = detect_twisted_canonical(p);
    REQUIRE(pw);
    CHECK(pw->twist_edge == 0);
    CHECK(relabel(p, pw->relabeling).link(0) == Matching{{0, 1}, {1, 2}, {2, 0}});
}

TEST_CASE("tree labeling modes") {
    SeededStream rng(13);
    const Cover c = random_full_cover(complete_bipartite_graph(1, 4), 3, rng);
    const auto canon = tree_labeling(c, TreeLabelingMode::canonical);
    CHECK(all_identity_except(relabel(c, canon.relabeling), std::nullopt));
    const auto tw = tree_labeling(c, TreeLabelingMode::twisted);
    CHECK(tw.twist_edge == 0);
    CHECK(all_identity_except(relabel(c, tw.relabeling), 0));
    CHECK_THROWS_AS(tree_labeling(canonical_cover(cycle_graph(3), 2), TreeLabelingMode::canonical), ValidationError);
    CHECK_THROWS_AS(tree_labeling(canonical_cover(path_graph(3), 1), TreeLabelingMode::twisted), ValidationError);
}

TEST_CASE("twister structure") {
    const Cover tw = make_twister(2, 3);
    CHECK(tw.base() == cycle_graph(4));
    CHECK(tw.link(3) == Matching{{0, 2}, {1, 0}, {2, 1}});
    for (EdgeId e = 0; e < 3; ++e) CHECK(tw.link(e) == Matching{{0, 0}, {1, 1}, {2, 2}});
    const auto mono = cycle_monodromy(tw);
    REQUIRE(mono);
    // Walking 0 -> 1 -> 2 -> 3 -> 0 moves every index by one.
    for (int i = 0; i < 3; ++i) CHECK((*mono)[i] == (i + 1) % 3);
    CHECK_THROWS_AS(make_twister(1, 3), ValidationError);
}

TEST_CASE("subcover and dot export") {
    const Cover c = make_twister(2, 2);
    const std::vector<Vertex> keep{0, 1};
    const Cover s = subcover(c, keep);
    CHECK(s.base() == path_graph(2));
    CHECK(s.link(0) == c.link(0));
    const std::string dot = to_dot(c);
    CHECK(dot.find("cluster") != std::string::npos);
    CHECK(dot.find("graph") != std::string::npos);
}
