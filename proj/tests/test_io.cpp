#include <doctest.h>

#include "dpcolor/error.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/random.hpp"

using namespace dpcolor;

namespace {

template <class T, class To, class From>
void round_trip(const T& value, To to, From from) {
    const Json j = to(value);
    CHECK(from(Json::parse(j.dump())) == value);
}

}  // namespace

TEST_CASE("graph and cover round trips") {
    round_trip(cycle_graph(5), graph_to_json, graph_from_json);
    round_trip(complete_graph(1), graph_to_json, graph_from_json);
    SeededStream rng(53);
    round_trip(random_full_cover(complete_bipartite_graph(2, 3), 3, rng), cover_to_json, cover_from_json);
    round_trip(Cover(path_graph(3), {0, 2, 1}), cover_to_json, cover_from_json);
    round_trip(make_twister(2, 3), cover_to_json, cover_from_json);
}

TEST_CASE("cover JSON layout") {
    const Json j = cover_to_json(make_twister(2, 2));
    CHECK(j["graph"]["n"] == 4);
    CHECK(j["list_sizes"] == Json::array({2, 2, 2, 2}));
    CHECK(j["links"][3]["edge"] == Json::array({0, 3}));
    CHECK(j["links"][3]["pairs"] == Json::parse("[[0,1],[1,0]]"));
}

TEST_CASE("links may name the edge backwards") {
    const Json j = Json::parse(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[2,3],
                                   "links":[{"edge":[1,0],"pairs":[[2,0]]}]})");
    const Cover c = cover_from_json(j);
    CHECK(c.link(0) == Matching{{0, 2}});
}

TEST_CASE("malformed documents") {
    auto bad = [](const char* text) { CHECK_THROWS_AS(cover_from_json(Json::parse(text)), ValidationError); };
    bad(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[2]})");
    bad(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[2,2],"links":[{"edge":[0,2],"pairs":[]}]})");
    bad(R"({"graph":{"n":3,"edges":[[0,1]]},"list_sizes":[2,2,2],"links":[{"edge":[1,2],"pairs":[]}]})");
    bad(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[2,2],"links":[{"edge":[0,1],"pairs":[[0,0],[0,1]]}]})");
    bad(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[2,2],"links":[{"edge":[0,1],"pairs":[[0,5]]}]})");
    bad(R"({"graph":{"n":2,"edges":[[0,1],[1,0]]},"list_sizes":[1,1]})");
    bad(R"({"graph":{"n":2,"edges":[[0,1]]},"list_sizes":[-1,1]})");
    bad(R"({"graph":{"n":"two","edges":[]},"list_sizes":[]})");
    bad(R"([1,2,3])");
    CHECK_THROWS_AS(read_json_file("/nonexistent/cover.json"), ValidationError);
}

TEST_CASE("counts, colorings, exhaustive results") {
    const Count big = boost::multiprecision::pow(Count(10), 30);
    CHECK(count_from_json(Json::parse(count_to_json(big).dump())) == big);
    CHECK(count_to_json(Count(15)) == 15);
    round_trip(std::optional<HColoring>(HColoring{{0, 2, 1}}), coloring_to_json, coloring_from_json);
    round_trip(std::optional<HColoring>(), coloring_to_json, coloring_from_json);
    CHECK(coloring_to_json(std::nullopt).dump() == R"({"coloring":null})");
    const ExhaustiveResult r = pdp_exhaustive(cycle_graph(4), 3);
    const ExhaustiveResult back = exhaustive_from_json(Json::parse(exhaustive_to_json(r).dump()));
    CHECK(back.value == r.value);
    CHECK(back.witness == r.witness);
    CHECK(back.covers_examined == r.covers_examined);
}

TEST_CASE("labelings, products, verdicts, censuses, classes") {
    const auto w = detect_twisted_canonical(make_twister(3, 3));
    const auto back = labeling_from_json(Json::parse(labeling_to_json(w).dump()));
    REQUIRE(back);
    CHECK(back->kind == w->kind);
    CHECK(back->relabeling == w->relabeling);
    CHECK(back->twist_edge == w->twist_edge);
    CHECK_FALSE(labeling_from_json(labeling_to_json(std::nullopt)));

    const ProductGraph pg(cycle_graph(3), path_graph(2));
    const ProductGraph pg2 = product_graph_from_json(Json::parse(product_graph_to_json(pg).dump()));
    CHECK(pg2.graph() == pg.graph());
    CHECK(pg2.left() == pg.left());

    const RandomConstruction rc = build_odd_cycle_random_bad_cover({1, 1, 2, 8, 10'000});
    const Json pj = product_cover_to_json(rc.cover, rc.seed);
    CHECK(pj["seed"] == 8);
    const ProductCover pc = product_cover_from_json(Json::parse(pj.dump()));
    CHECK(pc.cover() == rc.cover.cover());
    CHECK(pc.k() == 1);
    CHECK(pc.t() == 2);

    const BadnessVerdict v = badness_verdict(pc);
    const BadnessVerdict v2 = verdict_from_json(Json::parse(verdict_to_json(v).dump()));
    CHECK(v2.bad == v.bad);
    CHECK(v2.witness == v.witness);
    CHECK(verdict_to_json(v)["witness"].contains("5"));

    SeededStream rng(59);
    ProductGraph small(cycle_graph(3), complete_bipartite_graph(1, 1));
    BadnessVerdict good;
    for (int i = 0; i < 20 && !good.coloring; ++i)
        good = badness_verdict(ProductCover(small, random_full_cover(small.graph(), 3, rng), 1, 1));
    REQUIRE(good.coloring);
    const BadnessVerdict g2 = verdict_from_json(Json::parse(verdict_to_json(good).dump()));
    CHECK(g2.coloring == good.coloring);

    const VolatileCensus c = volatile_census(pc);
    const VolatileCensus c2 = census_from_json(Json::parse(census_to_json(c).dump()));
    CHECK(c2.c == c.c);
    CHECK(c2.z == c.z);
    CHECK(c2.certificate == c.certificate);

    const ShiftClassPartition p = shift_classes_twister(make_twister(2, 3));
    const ShiftClassPartition p2 = shift_classes_from_json(Json::parse(shift_classes_to_json(p).dump()));
    CHECK(p2.relation == p.relation);
    CHECK(p2.modulus == p.modulus);
    CHECK(p2.classes == p.classes);
}
