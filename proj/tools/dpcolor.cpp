#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "dpcolor/error.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/verify.hpp"

using namespace dpcolor;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, exhausted = 3 };

// "cycle:5", "path:4", "complete:3", "bipartite:2,4", or a Graph JSON file.
Graph load_graph(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        std::vector<int> params;
        std::stringstream ss(spec.substr(colon + 1));
        for (std::string item; std::getline(ss, item, ',');) {
            try {
                params.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw ValidationError("bad graph parameter \"" + item + "\"");
            }
        }
        static const std::map<std::string, GraphFamily> families = {{"cycle", GraphFamily::cycle},
                                                                   {"path", GraphFamily::path},
                                                                   {"complete", GraphFamily::complete},
                                                                   {"bipartite", GraphFamily::complete_bipartite}};
        if (auto it = families.find(kind); it != families.end()) return standard_graph(it->second, params);
    }
    return graph_from_json(read_json_file(spec));
}

void print_stats(const SearchStats& s) {
    std::cerr << "nodes=" << s.nodes << " backtracks=" << s.backtracks
              << " elapsed_ms=" << std::chrono::duration<double, std::milli>(s.elapsed).count() << '\n';
}

struct Output {
    Json doc;
    int code = ok;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact DP-coloring workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t budget = kDefaultBudget;
    std::uint64_t retry_cap = 10'000;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    app.add_option("--budget", budget, "Maximum normalized covers for exhaustive search")
        ->envname("DPCOLOR_BUDGET");
    app.add_option("--retry-cap", retry_cap, "Resampling attempts per class")->envname("DPCOLOR_RETRY_CAP");
    app.add_option("--seed", seed, "Seed for randomized verbs")->envname("DPCOLOR_SEED");
    app.add_option("--out", out_path, "Also write the result to this file");

    std::string cover_path, graph_spec, left_spec, right_spec, mode, parity;
    int fold = 0, k = 1, m = 1, half = 2, n = 3;
    std::uint64_t t = 1, limit = 0;
    std::string minimizing_path, bad_path, claim;
    std::optional<std::string> filter;
    bool slow = false;

    auto cover_opt = [&](CLI::App* sub) { sub->add_option("--cover", cover_path, "Cover JSON")->required(); };
    auto graph_opt = [&](CLI::App* sub) {
        sub->add_option("--graph", graph_spec, "Graph JSON file or family:params")->required();
    };

    auto* solve = app.add_subcommand("solve", "Find an H-coloring");
    cover_opt(solve);
    auto* count = app.add_subcommand("count", "Count H-colorings");
    cover_opt(count);
    auto* enumerate = app.add_subcommand("enumerate", "List H-colorings in lexicographic order");
    cover_opt(enumerate);
    enumerate->add_option("--limit", limit, "Stop after this many (0 = all)");
    auto* pdp = app.add_subcommand("pdp", "P_DP(G, m) by exhaustive search");
    graph_opt(pdp);
    pdp->add_option("--fold,-m", fold, "Fold size")->required()->check(CLI::Range(0, 8));
    auto* chidp = app.add_subcommand("chidp", "chi_DP(G) by exhaustive search");
    graph_opt(chidp);
    auto* col = app.add_subcommand("col", "Coloring number and degeneracy ordering");
    graph_opt(col);
    auto* product = app.add_subcommand("product", "Cartesian product of two graphs");
    product->add_option("--left", left_spec, "Left factor")->required();
    product->add_option("--right", right_spec, "Right factor")->required();

    auto* make_cover = app.add_subcommand("make-cover", "Build a standard cover");
    make_cover->require_subcommand(1);
    auto* mc_canonical = make_cover->add_subcommand("canonical", "Identity links everywhere");
    graph_opt(mc_canonical);
    mc_canonical->add_option("--fold", fold, "Fold size")->required()->check(CLI::NonNegativeNumber);
    auto* mc_twister = make_cover->add_subcommand("twister", "Twister of C_{2m}");
    mc_twister->add_option("--half-length,-m", half, "m, for C_{2m}")->required();
    mc_twister->add_option("--fold", fold, "Fold size")->required();
    auto* mc_tree = make_cover->add_subcommand("tree-label", "Label a full cover of a tree");
    cover_opt(mc_tree);
    mc_tree->add_option("--mode", mode, "canonical or twisted")
        ->check(CLI::IsMember({"canonical", "twisted"}))
        ->default_val("canonical");

    auto* detect = app.add_subcommand("detect", "Search for a labeling");
    detect->require_subcommand(1);
    auto* det_canonical = detect->add_subcommand("canonical", "Canonical labeling");
    cover_opt(det_canonical);
    auto* det_twisted = detect->add_subcommand("twisted", "Twisted-canonical labeling");
    cover_opt(det_twisted);

    auto* construct = app.add_subcommand("construct", "Bad covers of G x K_{k,t}");
    construct->require_subcommand(1);
    auto* thm14 = construct->add_subcommand("thm14", "Enumerated construction");
    graph_opt(thm14);
    thm14->add_option("--k", k)->required();
    thm14->add_option("--t", t)->required();
    thm14->add_option("--minimizing", minimizing_path, "Cover of G minimizing colorings at fold chi_DP+k-1");
    thm14->add_option("--bad", bad_path, "Bad cover of G at fold chi_DP-1");
    auto* thm17 = construct->add_subcommand("thm17", "Random construction on C_{2m+1}");
    auto* thm18 = construct->add_subcommand("thm18", "Random construction on C_{2m+2}");
    for (auto* sub : {thm17, thm18}) {
        sub->add_option("--m", m, "Cycle half-length")->required();
        sub->add_option("--k", k)->required();
        sub->add_option("--t", t)->required();
    }

    auto* verdict = app.add_subcommand("verdict", "Decide badness via volatile colorings");
    cover_opt(verdict);
    auto* census = app.add_subcommand("census", "Count volatile colorings per fiber");
    cover_opt(census);

    auto* classes = app.add_subcommand("classes", "Shift-class partitions");
    classes->require_subcommand(1);
    auto* cl_odd = classes->add_subcommand("odd", "Proper colorings of an odd cycle");
    cl_odd->add_option("--n", n, "Cycle length")->required();
    cl_odd->add_option("--k", k, "Colors")->required();
    auto* cl_twister = classes->add_subcommand("twister", "Colorings of a twister");
    cl_twister->add_option("--cover", cover_path, "Twister cover JSON");
    cl_twister->add_option("--half-length,-m", half, "m, for C_{2m}");
    cl_twister->add_option("--fold", fold, "Fold size");

    auto* ck = app.add_subcommand("ck", "Fibers per class");
    ck->add_option("--parity", parity, "odd or even")->required()->check(CLI::IsMember({"odd", "even"}));
    ck->add_option("--k", k)->required()->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Check claims");
    verify->add_option("claim", claim, "Claim id or all")->default_val("all");
    verify->add_option("--filter", filter, "Only reports under this id");
    verify->add_flag("--slow", slow, "Include slow cases");

    auto* export_dot = app.add_subcommand("export-dot", "Graphviz rendering of a cover");
    cover_opt(export_dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << '\n';
        std::cout << Json{{"error", e.what()}}.dump() << '\n';
        return usage;
    }

    auto require_seed = [&]() {
        if (!seed) throw ValidationError("randomized verbs need --seed (or DPCOLOR_SEED)");
        return *seed;
    };

    Output out;
    try {
        if (solve->parsed()) {
            SearchStats stats;
            const auto h = find_coloring(cover_from_json(read_json_file(cover_path)), &stats);
            print_stats(stats);
            out.doc = coloring_to_json(h);
            out.code = h ? ok : negative;
        } else if (count->parsed()) {
            SearchStats stats;
            out.doc = {{"count", count_to_json(count_colorings(cover_from_json(read_json_file(cover_path)), &stats))}};
            print_stats(stats);
        } else if (enumerate->parsed()) {
            Json list = Json::array();
            enumerate_colorings(cover_from_json(read_json_file(cover_path)), [&](const HColoring& h) {
                list.push_back(h.choice);
                return limit == 0 || list.size() < limit;
            });
            out.doc = {{"count", list.size()}, {"colorings", list}};
        } else if (pdp->parsed()) {
            out.doc = exhaustive_to_json(pdp_exhaustive(load_graph(graph_spec), fold, budget));
        } else if (chidp->parsed()) {
            out.doc = exhaustive_to_json(chi_dp_exhaustive(load_graph(graph_spec), budget));
        } else if (col->parsed()) {
            const auto d = coloring_number(load_graph(graph_spec));
            out.doc = {{"col", d.width}, {"ordering", d.ordering}};
        } else if (product->parsed()) {
            out.doc = product_graph_to_json(ProductGraph(load_graph(left_spec), load_graph(right_spec)));
        } else if (mc_canonical->parsed()) {
            out.doc = cover_to_json(canonical_cover(load_graph(graph_spec), fold));
        } else if (mc_twister->parsed()) {
            out.doc = cover_to_json(make_twister(half, fold));
        } else if (mc_tree->parsed()) {
            const Cover c = cover_from_json(read_json_file(cover_path));
            const auto w = tree_labeling(c, mode == "twisted" ? TreeLabelingMode::twisted : TreeLabelingMode::canonical);
            out.doc = labeling_to_json(w);
            out.doc["cover"] = cover_to_json(relabel(c, w.relabeling));
        } else if (det_canonical->parsed() || det_twisted->parsed()) {
            const Cover c = cover_from_json(read_json_file(cover_path));
            const auto w = det_canonical->parsed() ? detect_canonical(c) : detect_twisted_canonical(c);
            out.doc = labeling_to_json(w);
            out.code = w ? ok : negative;
        } else if (thm14->parsed()) {
            std::optional<Cover> minimizing, bad;
            if (!minimizing_path.empty()) minimizing = cover_from_json(read_json_file(minimizing_path));
            if (!bad_path.empty()) bad = cover_from_json(read_json_file(bad_path));
            if (t > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) throw ValidationError("t too large");
            out.doc = product_cover_to_json(
                build_enumerated_bad_cover(load_graph(graph_spec), k, static_cast<int>(t), minimizing, bad, budget));
        } else if (thm17->parsed() || thm18->parsed()) {
            const ConstructionParams p{m, k, t, require_seed(), retry_cap};
            const RandomConstruction rc =
                thm17->parsed() ? build_odd_cycle_random_bad_cover(p) : build_even_cycle_random_bad_cover(p);
            out.doc = product_cover_to_json(rc.cover, rc.seed);
            out.doc["fibers_per_class"] = rc.fibers_per_class;
            out.doc["class_count"] = rc.class_count;
            out.doc["attempts"] = rc.attempts;
        } else if (verdict->parsed()) {
            const BadnessVerdict v = badness_verdict(product_cover_from_json(read_json_file(cover_path)));
            out.doc = verdict_to_json(v);
            out.code = v.bad ? negative : ok;
        } else if (census->parsed()) {
            out.doc = census_to_json(volatile_census(product_cover_from_json(read_json_file(cover_path))));
        } else if (cl_odd->parsed()) {
            out.doc = shift_classes_to_json(shift_classes_odd(n, k));
        } else if (cl_twister->parsed()) {
            const Cover tw = cover_path.empty() ? make_twister(half, fold) : cover_from_json(read_json_file(cover_path));
            out.doc = shift_classes_to_json(shift_classes_twister(tw));
        } else if (ck->parsed()) {
            const CycleParity cp = parity == "odd" ? CycleParity::odd : CycleParity::even;
            out.doc = {{"parity", parity}, {"k", k}, {"c_k", c_k(cp, k)}, {"closed_form", c_k_closed_form(cp, k)}};
        } else if (verify->parsed()) {
            VerifyOptions opts;
            opts.slow = slow;
            if (seed) opts.seed = *seed;
            if (filter) opts.filter = filter;
            else if (claim != "all") opts.filter = claim;
            const auto reports = verify_all(opts);
            for (const auto& r : reports)
                std::cerr << (r.pass ? "PASS " : "FAIL ") << r.claim << " expected=" << r.expected
                          << " computed=" << r.computed << '\n';
            out.doc = reports_to_json(reports);
            out.code = out.doc["pass"].get<bool>() ? ok : negative;
        } else if (export_dot->parsed()) {
            out.doc = {{"dot", to_dot(cover_from_json(read_json_file(cover_path)))}};
        }
        if (!out_path.empty()) {
            if (export_dot->parsed()) {
                std::ofstream f(out_path);
                if (!f) throw ValidationError("cannot write " + out_path);
                f << out.doc["dot"].get<std::string>();
            } else {
                write_json_file(out_path, out.doc);
            }
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << Json{{"error", e.what()}}.dump() << '\n';
        return usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (requested " << e.requested() << ")\n";
        std::cout << Json{{"error", e.what()}, {"requested", e.requested()}}.dump() << '\n';
        return exhausted;
    } catch (const RetryExhausted& e) {
        std::cerr << "retry cap reached: " << e.what() << '\n';
        std::cout << Json{{"error", e.what()}}.dump() << '\n';
        return exhausted;
    }

    std::cout << out.doc.dump(2) << '\n';
    return out.code;
}
