#include "dpcolor/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "dpcolor/error.hpp"
#include "dpcolor/random.hpp"

namespace dpcolor {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
public:
    explicit Recorder(std::vector<VerificationReport>& out) : out_(out), start_(Clock::now()) {}

    void check(std::string claim, std::string source, std::string expected, std::string computed) {
        const auto now = Clock::now();
        const bool pass = expected == computed;
        out_.push_back({std::move(claim), std::move(source), std::move(expected), std::move(computed), pass,
                        std::chrono::duration_cast<std::chrono::nanoseconds>(now - start_)});
        start_ = now;
    }

private:
    std::vector<VerificationReport>& out_;
    Clock::time_point start_;
};

std::string str(const Count& c) { return c.str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }

std::uint64_t max_z(const VolatileCensus& c) { return c.z.empty() ? 0 : *std::max_element(c.z.begin(), c.z.end()); }

// Bad, and every witness entry names a fiber its X-coloring is volatile for.
std::string checked_verdict(const ProductCover& pc) {
    const BadnessVerdict v = badness_verdict(pc);
    if (!v.bad) return is_coloring(pc.cover(), *v.coloring) ? "good" : "good (invalid coloring)";
    const auto xs = all_colorings(pc.x_subcover());
    if (xs.size() != v.witness.size()) return "bad (witness size mismatch)";
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!is_volatile(pc, xs[i], v.witness[i])) return "bad (witness " + std::to_string(i) + " fails)";
    return "bad";
}

// The first t fibers of a cover of G □ K_{k,t'}, t <= t'.
ProductCover truncate_fibers(const ProductCover& pc, int t) {
    std::vector<Cover> xs, ys;
    for (int j = 0; j < pc.k(); ++j) xs.push_back(pc.x_fiber(j));
    for (int q = 0; q < t; ++q) ys.push_back(pc.y_fiber(q));
    std::vector<FiberLink> links;
    const ProductGraph& pg = pc.product();
    for (int j = 0; j < pc.k(); ++j)
        for (int q = 0; q < t; ++q)
            for (Vertex u = 0; u < pc.n(); ++u) {
                const Vertex a = pc.x_vertex(u, j), b = pc.y_vertex(u, q);
                links.push_back({a, b, pc.cover().link(*pg.graph().find_edge(a, b))});
            }
    return assemble_product_cover(pc.factor(), pc.k(), t, xs, ys, links);
}

Count odd_cycle_pdp(int n, int m) { return boost::multiprecision::pow(Count(m - 1), n) - (m - 1); }
Count even_cycle_pdp(int n, int m) { return boost::multiprecision::pow(Count(m - 1), n) - 1; }

void pdp_cycles(Recorder& r, bool odd) {
    const std::vector<std::pair<int, int>> cases =
        odd ? std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}}
            : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {6, 2}};
    const std::string id = odd ? "pdp-odd-cycle" : "pdp-even-cycle";
    for (auto [n, m] : cases) {
        const Count expected = odd ? odd_cycle_pdp(n, m) : even_cycle_pdp(n, m);
        const std::string tag = "-C" + str(n) + "-m" + str(m);
        r.check(id + tag, odd ? "(m-1)^n - (m-1)" : "(m-1)^n - 1", str(expected),
                str(pdp_exhaustive(cycle_graph(n), m).value));
        if (!odd)
            r.check(id + tag + "-twister", "(m-1)^n - 1", str(expected),
                    str(count_colorings(make_twister(n / 2, m))));
    }
}

void chi_dp(Recorder& r) {
    const std::vector<std::pair<std::string, Graph>> cases = {
        {"C3", cycle_graph(3)}, {"C4", cycle_graph(4)}, {"C5", cycle_graph(5)},
        {"C6", cycle_graph(6)}, {"K1", complete_graph(1)}, {"P4", path_graph(4)},
        {"K2,4", complete_bipartite_graph(2, 4)}};
    const std::vector<int> expected = {3, 3, 3, 3, 1, 2, 3};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto res = chi_dp_exhaustive(cases[i].second);
        r.check("chi-dp-" + cases[i].first, "known value", str(expected[i]), str(res.value));
        const bool witness_bad = !find_coloring(res.witness) && res.witness.uniform_fold() == expected[i] - 1;
        r.check("chi-dp-" + cases[i].first + "-witness", "bad cover one below", "bad", witness_bad ? "bad" : "not bad");
    }
}

void thm14(Recorder& r) {
    struct Case {
        std::string name;
        Graph g;
        int k, t;
        bool flat;
    };
    const std::vector<Case> cases = {{"K1-k1-t1", complete_graph(1), 1, 1, true},
                                     {"K1-k2-t4", complete_graph(1), 2, 4, true},
                                     {"C3-k1-t6", cycle_graph(3), 1, 6, false},
                                     {"C4-k1-t15", cycle_graph(4), 1, 15, false}};
    for (const Case& c : cases) {
        const ProductCover pc = build_enumerated_bad_cover(c.g, c.k, c.t);
        r.check("thm-1.4-" + c.name, "t >= P_DP(G, chi_DP(G)+k-1)^k", "bad", checked_verdict(pc));
        if (c.flat)
            r.check("thm-1.4-" + c.name + "-flat", "direct search", "none",
                    find_coloring(pc.cover()) ? "found" : "none");
    }
}

RandomConstruction odd_construction(int m, int k, std::uint64_t t, std::uint64_t seed) {
    return build_odd_cycle_random_bad_cover({m, k, t, seed, 10'000});
}

RandomConstruction even_construction(int m, int k, std::uint64_t t, std::uint64_t seed) {
    return build_even_cycle_random_bad_cover({m, k, t, seed, 10'000});
}

void census_claim(Recorder& r, const std::string& id, const ProductCover& pc, std::uint64_t c, std::uint64_t z_bound) {
    const VolatileCensus census = volatile_census(pc);
    r.check(id + "-colorings", "X-fiber color count", str(c), str(census.c));
    r.check(id + "-z", "volatile bound", "<= " + str(z_bound),
            max_z(census) <= z_bound ? "<= " + str(z_bound) : str(max_z(census)));
    r.check(id + "-certificate", "c > z t", "true", census.certificate ? "true" : "false");
    r.check(id + "-verdict", "census implies a coloring", "good", checked_verdict(pc));
}

void prop37(Recorder& r, std::uint64_t seed) {
    const RandomConstruction full = even_construction(1, 1, 15, seed);
    r.check("prop-3.7-forward", "t = P_DP(C_4, 3) = 15", "bad", checked_verdict(full.cover));
    census_claim(r, "prop-3.7-backward", truncate_fibers(full.cover, 14), 15, 1);
}

void prop43(Recorder& r, std::uint64_t seed) {
    const RandomConstruction full = odd_construction(1, 1, 2, seed);
    r.check("prop-4.3-forward", "t = P_DP(C_3, 3) / 3 = 2", "bad", checked_verdict(full.cover));
    census_claim(r, "prop-4.3-backward", truncate_fibers(full.cover, 1), 6, 3);
}

void volatile_bound(Recorder& r, const std::string& id, int n, std::uint64_t bound, std::uint64_t seed) {
    for (int q = 1; q <= 3; ++q) {
        ProductGraph pg(cycle_graph(n), complete_bipartite_graph(1, q));
        SeededStream rng(seed, static_cast<std::uint64_t>(q));
        std::uint64_t worst = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            ProductCover pc(pg, random_full_cover(pg.graph(), 3, rng), 1, q);
            worst = std::max(worst, max_z(volatile_census(pc)));
        }
        r.check(id + "-q" + str(q), "1000 random 3-fold covers", "<= " + str(bound),
                worst <= bound ? "<= " + str(bound) : str(worst));
    }
}

void ck_table(Recorder& r) {
    const std::vector<std::uint64_t> odd = {1, 3, 8}, even = {3, 10, 48};
    for (int k = 1; k <= 3; ++k) {
        r.check("ck-table-odd-k" + str(k), "reported table", str(odd[k - 1]), str(c_k(CycleParity::odd, k)));
        r.check("ck-table-even-k" + str(k), "reported table", str(even[k - 1]), str(c_k(CycleParity::even, k)));
    }
}

void random_constructors(Recorder& r, bool slow, std::uint64_t seed) {
    r.check("random-constructors-odd-C3-k1-t2", "t = c_1 b", "bad",
            checked_verdict(odd_construction(1, 1, 2, seed).cover));
    r.check("random-constructors-odd-C5-k1-t10", "t = c_1 b", "bad",
            checked_verdict(odd_construction(2, 1, 10, seed).cover));
    if (slow)
        r.check("random-constructors-odd-C3-k2-t108", "t = c_2 b^2", "bad",
                checked_verdict(odd_construction(1, 2, 108, seed).cover));
    r.check("random-constructors-even-C4-k1-t15", "t = c_1 b", "bad",
            checked_verdict(even_construction(1, 1, 15, seed).cover));
}

// All 2^|E| full 2-fold covers of C_n (identity or swap on each edge).
std::vector<Cover> two_fold_covers(int n) {
    const Graph g = cycle_graph(n);
    std::vector<Cover> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.edge_count()); ++mask) {
        std::vector<Matching> links(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            links[e] = (mask >> e & 1) ? Matching{{0, 1}, {1, 0}} : Matching{{0, 0}, {1, 1}};
        out.emplace_back(g, std::vector<int>(n, 2), std::move(links));
    }
    return out;
}

void labelings(Recorder& r) {
    for (int n = 3; n <= 6; ++n) {
        int agree = 0, lemma34 = 0, witnesses = 0;
        const auto covers = two_fold_covers(n);
        for (const Cover& c : covers) {
            const bool bad = !find_coloring(c);
            const auto canon = detect_canonical(c);
            const auto twisted = detect_twisted_canonical(c);
            if (bad == (n % 2 ? canon.has_value() : twisted.has_value())) ++agree;
            if (twisted.has_value() == (c.is_full() && !canon)) ++lemma34;
            bool ok = true;
            if (canon) ok = relabel(c, canon->relabeling) == canonical_cover(c.base(), 2);
            if (twisted) {
                const Cover t = relabel(c, twisted->relabeling);
                for (EdgeId e = 0; e < t.base().edge_count() && ok; ++e) {
                    const bool identity = t.link(e) == Matching{{0, 0}, {1, 1}};
                    ok = (e == twisted->twist_edge) != identity;
                }
            }
            witnesses += ok;
        }
        const std::string total = str(static_cast<int>(covers.size()));
        const std::string tag = "-C" + str(n);
        r.check("labelings" + tag + "-bad", n % 2 ? "bad iff canonical" : "bad iff twisted-canonical", total,
                str(agree));
        r.check("labelings" + tag + "-twisted", "twisted iff full and not canonical", total, str(lemma34));
        r.check("labelings" + tag + "-witness", "relabeling reproduces the labeling", total, str(witnesses));
    }
}

std::string partition_shape(const ShiftClassPartition& p, const std::vector<HColoring>& all) {
    std::set<HColoring> seen;
    std::size_t size = 0;
    bool uniform = true;
    for (const auto& cls : p.classes) {
        if (size == 0) size = cls.size();
        uniform = uniform && cls.size() == size;
        for (std::size_t j = 0; j < cls.size(); ++j) {
            HColoring s = cls[0];
            for (int& x : s.choice) x = (x + static_cast<int>(j)) % p.modulus;
            if (!(s == cls[j])) return "class not a shift orbit";
            if (!seen.insert(cls[j]).second) return "classes overlap";
        }
    }
    if (seen != std::set<HColoring>(all.begin(), all.end())) return "classes do not cover the colorings";
    if (!uniform) return "unequal class sizes";
    return str(static_cast<int>(p.classes.size())) + " x " + str(static_cast<int>(size));
}

void shift_classes(Recorder& r) {
    r.check("shift-classes-odd-C3", "(k-1)^n - (k-1) colorings in classes of k", "2 x 3",
            partition_shape(shift_classes_odd(3, 3), all_colorings(canonical_cover(cycle_graph(3), 3))));
    const Cover c4 = make_twister(2, 3), c6 = make_twister(3, 3);
    r.check("shift-classes-twister-C4", "(k-1)^n - 1 colorings in classes of k", "5 x 3",
            partition_shape(shift_classes_twister(c4), all_colorings(c4)));
    r.check("shift-classes-twister-C6", "(k-1)^n - 1 colorings in classes of k", "21 x 3",
            partition_shape(shift_classes_twister(c6), all_colorings(c6)));
}

void upper_bound(Recorder& r, std::uint64_t seed) {
    const std::vector<std::pair<std::string, ProductGraph>> cases = {
        {"C3xK2", ProductGraph(cycle_graph(3), complete_graph(2))},
        {"C4xP3", ProductGraph(cycle_graph(4), path_graph(3))}};
    std::uint64_t stream = 0;
    for (const auto& [name, pg] : cases) {
        SeededStream rng(seed, 100 + stream++);
        int valid = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const Cover c = random_full_cover(pg.graph(), 4, rng);
            valid += is_coloring(c, upper_bound_coloring(pg, c));
        }
        r.check("upper-bound-" + name, "chi_DP(G) + col(H) - 1 = 4 colors suffice", "500", str(valid));
    }
}

struct Claim {
    ClaimInfo info;
    std::function<void(Recorder&, const VerifyOptions&)> run;
};

const std::vector<Claim>& claims() {
    static const std::vector<Claim> table = {
        {{"pdp-odd-cycle", "DP color function of odd cycles", 1}, [](Recorder& r, auto&) { pdp_cycles(r, true); }},
        {{"pdp-even-cycle", "DP color function of even cycles and twisters", 1},
         [](Recorder& r, auto&) { pdp_cycles(r, false); }},
        {{"chi-dp", "DP-chromatic numbers of small graphs", 2}, [](Recorder& r, auto&) { chi_dp(r); }},
        {{"thm-1.4", "enumerated bad covers of G x K_{k,t}", 3}, [](Recorder& r, auto&) { thm14(r); }},
        {{"prop-3.7", "sharp threshold for C_4 x K_{1,t}", 4},
         [](Recorder& r, const VerifyOptions& o) { prop37(r, o.seed); }},
        {{"lemma-3.6", "at most one volatile coloring per even-cycle fiber", 4},
         [](Recorder& r, const VerifyOptions& o) { volatile_bound(r, "lemma-3.6", 4, 1, o.seed); }},
        {{"prop-4.3", "sharp threshold for C_3 x K_{1,t}", 5},
         [](Recorder& r, const VerifyOptions& o) { prop43(r, o.seed); }},
        {{"lemma-4.2", "at most three volatile colorings per odd-cycle fiber", 5},
         [](Recorder& r, const VerifyOptions& o) { volatile_bound(r, "lemma-4.2", 3, 3, o.seed); }},
        {{"ck-table", "fibers per class", 6}, [](Recorder& r, auto&) { ck_table(r); }},
        {{"random-constructors", "randomized bad covers of cycle products", 7},
         [](Recorder& r, const VerifyOptions& o) { random_constructors(r, o.slow, o.seed); }},
        {{"labelings", "2-fold cycle covers: badness and labelings", 8}, [](Recorder& r, auto&) { labelings(r); }},
        {{"shift-classes", "shift-class partitions", 9}, [](Recorder& r, auto&) { shift_classes(r); }},
        {{"upper-bound", "fiber-by-fiber coloring of products", 10},
         [](Recorder& r, const VerifyOptions& o) { upper_bound(r, o.seed); }},
    };
    return table;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.compare(0, prefix.size(), prefix) == 0; }

}  // namespace

const std::vector<ClaimInfo>& claim_catalog() {
    static const std::vector<ClaimInfo> infos = [] {
        std::vector<ClaimInfo> out;
        for (const Claim& c : claims()) out.push_back(c.info);
        return out;
    }();
    return infos;
}

std::vector<VerificationReport> verify_all(const VerifyOptions& opts) {
    std::vector<VerificationReport> out;
    bool selected = false;
    for (const Claim& c : claims()) {
        const std::string& id = c.info.id;
        if (opts.filter && *opts.filter != id && !starts_with(*opts.filter, id + "-")) continue;
        selected = true;
        std::vector<VerificationReport> local;
        Recorder r(local);
        try {
            c.run(r, opts);
        } catch (const std::exception& e) {
            r.check(id, "claim run", "completed", std::string("error: ") + e.what());
        }
        for (auto& rep : local)
            if (!opts.filter || *opts.filter == id || starts_with(rep.claim, *opts.filter)) out.push_back(std::move(rep));
    }
    if (!selected) throw ValidationError("no claim matches \"" + *opts.filter + "\"");
    return out;
}

Json report_to_json(const VerificationReport& r) {
    return {{"claim", r.claim},
            {"source", r.source},
            {"expected", r.expected},
            {"computed", r.computed},
            {"pass", r.pass},
            {"elapsed_ms", std::chrono::duration<double, std::milli>(r.elapsed).count()}};
}

Json reports_to_json(const std::vector<VerificationReport>& rs) {
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : rs) {
        arr.push_back(report_to_json(r));
        all = all && r.pass;
    }
    return {{"pass", all}, {"reports", arr}};
}

}  // namespace dpcolor
