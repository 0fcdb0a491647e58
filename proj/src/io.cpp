#include "dpcolor/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) fail(std::string("expected an object with field \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::uint64_t as_u64(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

std::pair<int, int> as_pair(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) fail(std::string(what) + " must be a pair [a, b]");
    return {as_int(j[0], what), as_int(j[1], what)};
}

std::vector<int> as_int_vector(const Json& j, const char* what) {
    if (!j.is_array()) fail(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const Json& x : j) out.push_back(as_int(x, what));
    return out;
}

Json pairs_to_json(const Matching& m) {
    Json out = Json::array();
    for (auto [i, j] : m) out.push_back({i, j});
    return out;
}

const char* kind_name(LabelingKind k) { return k == LabelingKind::canonical ? "canonical" : "twisted"; }

}  // namespace

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
    const int n = as_int(field(j, "n"), "n");
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) fail("edges must be an array");
    std::vector<std::pair<int, int>> list;
    for (const Json& e : edges) list.push_back(as_pair(e, "edge"));
    return Graph(n, list);
}

Json product_graph_to_json(const ProductGraph& pg) {
    Json index = Json::array();
    for (Vertex v = 0; v < pg.right().vertex_count(); ++v)
        for (Vertex u = 0; u < pg.left().vertex_count(); ++u) index.push_back({{"pair", {u, v}}, {"index", pg.index(u, v)}});
    return {{"graph", graph_to_json(pg.graph())},
            {"left", graph_to_json(pg.left())},
            {"right", graph_to_json(pg.right())},
            {"index", index}};
}

ProductGraph product_graph_from_json(const Json& j) {
    ProductGraph pg(graph_from_json(field(j, "left")), graph_from_json(field(j, "right")));
    if (j.contains("graph") && !(graph_from_json(j["graph"]) == pg.graph()))
        fail("product graph does not match its factors");
    if (j.contains("index")) {
        for (const Json& row : j["index"]) {
            auto [u, v] = as_pair(field(row, "pair"), "pair");
            if (u < 0 || v < 0 || u >= pg.left().vertex_count() || v >= pg.right().vertex_count() ||
                as_int(field(row, "index"), "index") != pg.index(u, v))
                fail("index table does not match the fiber-major numbering");
        }
    }
    return pg;
}

Json cover_to_json(const Cover& c) {
    Json links = Json::array();
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        if (c.link(e).empty()) continue;
        const Edge& ed = c.base().edge(e);
        links.push_back({{"edge", {ed.u, ed.v}}, {"pairs", pairs_to_json(c.link(e))}});
    }
    return {{"graph", graph_to_json(c.base())}, {"list_sizes", c.list_sizes()}, {"links", links}};
}

Cover cover_from_json(const Json& j) {
    Graph g = graph_from_json(field(j, "graph"));
    std::vector<int> sizes = as_int_vector(field(j, "list_sizes"), "list size");
    if (static_cast<int>(sizes.size()) != g.vertex_count()) fail("need one list size per vertex");
    for (int s : sizes)
        if (s < 0) fail("list sizes must be non-negative");
    std::vector<Matching> links(g.edge_count());
    std::vector<char> seen(g.edge_count(), 0);
    const Json& lj = j.contains("links") ? j["links"] : Json::array();
    if (!lj.is_array()) fail("links must be an array");
    for (const Json& l : lj) {
        auto [a, b] = as_pair(field(l, "edge"), "edge");
        if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count()) fail("link endpoint out of range");
        const auto e = g.find_edge(a, b);
        if (!e) {
            std::ostringstream msg;
            msg << "link on non-edge [" << a << ", " << b << "]";
            fail(msg.str());
        }
        if (seen[*e]++) fail("edge listed twice in links");
        const Json& pairs = field(l, "pairs");
        if (!pairs.is_array()) fail("pairs must be an array");
        for (const Json& p : pairs) {
            auto [i, k] = as_pair(p, "pair");
            links[*e].push_back(a < b ? IndexPair{i, k} : IndexPair{k, i});
        }
    }
    Cover c(std::move(g), std::move(sizes), std::move(links));
    require_valid(c);
    return c;
}

Json product_cover_to_json(const ProductCover& pc, std::optional<std::uint64_t> seed) {
    Json out = cover_to_json(pc.cover());
    out["k"] = pc.k();
    out["t"] = pc.t();
    out["factor"] = graph_to_json(pc.factor());
    if (seed) out["seed"] = *seed;
    return out;
}

ProductCover product_cover_from_json(const Json& j) {
    const int k = as_int(field(j, "k"), "k");
    const int t = as_int(field(j, "t"), "t");
    if (k < 1 || t < 0) fail("need k >= 1 and t >= 0");
    Cover c = cover_from_json(j);
    ProductGraph pg(graph_from_json(field(j, "factor")), complete_bipartite_graph(k, t));
    return ProductCover(std::move(pg), std::move(c), k, t);
}

Json count_to_json(const Count& c) {
    if (c >= 0 && c <= Count(std::numeric_limits<std::uint64_t>::max())) return static_cast<std::uint64_t>(c);
    return c.str();
}

Count count_from_json(const Json& j) {
    if (j.is_number_unsigned()) return Count(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Count(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Count(j.get<std::string>());
        } catch (const std::exception&) {
            fail("count string is not an integer");
        }
    }
    fail("count must be an integer or a decimal string");
}

Json coloring_to_json(const std::optional<HColoring>& h) {
    if (!h) return {{"coloring", nullptr}};
    return {{"coloring", {{"choice", h->choice}}}};
}

std::optional<HColoring> coloring_from_json(const Json& j) {
    const Json& c = j.contains("choice") ? j : field(j, "coloring");
    if (c.is_null()) return std::nullopt;
    return HColoring{as_int_vector(field(c, "choice"), "choice")};
}

Json exhaustive_to_json(const ExhaustiveResult& r) {
    return {{"value", count_to_json(r.value)},
            {"covers_examined", r.covers_examined},
            {"witness", cover_to_json(r.witness)}};
}

ExhaustiveResult exhaustive_from_json(const Json& j) {
    return {count_from_json(field(j, "value")), cover_from_json(field(j, "witness")),
            as_u64(field(j, "covers_examined"), "covers_examined")};
}

Json labeling_to_json(const std::optional<LabelingWitness>& w) {
    if (!w) return {{"labeling", nullptr}};
    Json out = {{"kind", kind_name(w->kind)}, {"relabeling", w->relabeling.perms}};
    out["twist_edge"] = w->twist_edge ? Json(*w->twist_edge) : Json(nullptr);
    return {{"labeling", out}};
}

std::optional<LabelingWitness> labeling_from_json(const Json& j) {
    const Json& l = field(j, "labeling");
    if (l.is_null()) return std::nullopt;
    LabelingWitness w;
    const Json& kind = field(l, "kind");
    if (kind == "canonical")
        w.kind = LabelingKind::canonical;
    else if (kind == "twisted")
        w.kind = LabelingKind::twisted_canonical;
    else
        fail("unknown labeling kind");
    const Json& perms = field(l, "relabeling");
    if (!perms.is_array()) fail("relabeling must be an array");
    for (const Json& p : perms) w.relabeling.perms.push_back(as_int_vector(p, "relabeling"));
    if (l.contains("twist_edge") && !l["twist_edge"].is_null()) w.twist_edge = as_int(l["twist_edge"], "twist_edge");
    return w;
}

Json verdict_to_json(const BadnessVerdict& v) {
    Json out = {{"verdict", v.bad ? "bad" : "good"}, {"x_colorings", v.x_colorings}};
    if (v.bad) {
        Json w = Json::object();
        for (std::size_t i = 0; i < v.witness.size(); ++i) w[std::to_string(i)] = v.witness[i];
        out["witness"] = w;
    } else {
        out["coloring"] = coloring_to_json(v.coloring)["coloring"];
    }
    return out;
}

BadnessVerdict verdict_from_json(const Json& j) {
    BadnessVerdict v;
    const Json& verdict = field(j, "verdict");
    if (verdict != "bad" && verdict != "good") fail("verdict must be \"bad\" or \"good\"");
    v.bad = verdict == "bad";
    v.x_colorings = as_u64(field(j, "x_colorings"), "x_colorings");
    if (v.bad) {
        const Json& w = field(j, "witness");
        if (!w.is_object()) fail("witness must be an object");
        v.witness.assign(w.size(), -1);
        for (auto it = w.begin(); it != w.end(); ++it) {
            std::size_t i = 0;
            try {
                i = std::stoul(it.key());
            } catch (const std::exception&) {
                fail("witness keys must be X-coloring indices");
            }
            if (i >= v.witness.size()) fail("witness keys must be 0..c-1");
            v.witness[i] = as_int(it.value(), "witness fiber");
        }
    } else {
        v.coloring = coloring_from_json(Json{{"coloring", field(j, "coloring")}});
        if (!v.coloring) fail("good verdict needs a coloring");
    }
    return v;
}

Json census_to_json(const VolatileCensus& c) {
    return {{"c", c.c}, {"z", c.z}, {"certificate", c.certificate}};
}

VolatileCensus census_from_json(const Json& j) {
    VolatileCensus c;
    c.c = as_u64(field(j, "c"), "c");
    const Json& z = field(j, "z");
    if (!z.is_array()) fail("z must be an array");
    for (const Json& x : z) c.z.push_back(as_u64(x, "z"));
    const Json& cert = field(j, "certificate");
    if (!cert.is_boolean()) fail("certificate must be a boolean");
    c.certificate = cert.get<bool>();
    return c;
}

Json shift_classes_to_json(const ShiftClassPartition& p) {
    Json classes = Json::array();
    for (const auto& cls : p.classes) {
        Json members = Json::array();
        for (const HColoring& h : cls) members.push_back(h.choice);
        classes.push_back(members);
    }
    return {{"relation", p.relation == ShiftRelation::odd_cycle_proper ? "odd" : "twister"},
            {"modulus", p.modulus},
            {"classes", classes}};
}

ShiftClassPartition shift_classes_from_json(const Json& j) {
    ShiftClassPartition p;
    const Json& rel = field(j, "relation");
    if (rel == "odd")
        p.relation = ShiftRelation::odd_cycle_proper;
    else if (rel == "twister")
        p.relation = ShiftRelation::twister;
    else
        fail("relation must be \"odd\" or \"twister\"");
    p.modulus = as_int(field(j, "modulus"), "modulus");
    const Json& classes = field(j, "classes");
    if (!classes.is_array()) fail("classes must be an array");
    for (const Json& cls : classes) {
        if (!cls.is_array()) fail("each class must be an array");
        std::vector<HColoring> members;
        for (const Json& m : cls) members.push_back(HColoring{as_int_vector(m, "class member")});
        p.classes.push_back(std::move(members));
    }
    return p;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace dpcolor
