#include "dpcolor/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

std::vector<int> identity_perm(int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// BFS spanning forest of the base graph with edge `skip` removed. Fills the
// relabeling so that every tree edge becomes the identity. comp[v] is the
// root of v's tree. Requires a full uniform cover.
void propagate_forest(const Cover& c, int k, std::optional<EdgeId> skip,
                      std::vector<std::vector<int>>& perms, std::vector<Vertex>& comp) {
    const Graph& g = c.base();
    const int n = g.vertex_count();
    perms.assign(n, {});
    comp.assign(n, -1);
    std::deque<Vertex> queue;
    for (Vertex root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        comp[root] = root;
        perms[root] = identity_perm(k);
        queue.push_back(root);
        while (!queue.empty()) {
            const Vertex p = queue.front();
            queue.pop_front();
            for (const Incidence& inc : g.incident(p)) {
                if (skip && inc.edge == *skip) continue;
                const Vertex ch = inc.neighbor;
                if (comp[ch] >= 0) continue;
                comp[ch] = root;
                // Want perms[ch][partner(i)] == perms[p][i].
                std::vector<int> pc(k, -1);
                for (int i = 0; i < k; ++i) pc[c.partner(inc.edge, p, i)] = perms[p][i];
                perms[ch] = std::move(pc);
                queue.push_back(ch);
            }
        }
    }
}

bool edge_identity_after(const Cover& c, EdgeId e, const std::vector<std::vector<int>>& perms) {
    const Edge& ed = c.base().edge(e);
    for (auto [i, j] : c.link(e))
        if (perms[ed.u][i] != perms[ed.v][j]) return false;
    return true;
}

}  // namespace

Cover::Cover(Graph base, std::vector<int> list_sizes, std::vector<Matching> links)
    : base_(std::move(base)), sizes_(std::move(list_sizes)), links_(std::move(links)) {
    if (static_cast<int>(sizes_.size()) != base_.vertex_count())
        throw ValidationError("cover needs one list size per vertex");
    if (static_cast<int>(links_.size()) != base_.edge_count())
        throw ValidationError("cover needs one link entry per edge");
    for (auto& m : links_) std::sort(m.begin(), m.end());
}

Cover::Cover(Graph base, std::vector<int> list_sizes)
    : Cover(base, std::move(list_sizes), std::vector<Matching>(base.edge_count())) {}

std::optional<int> Cover::uniform_fold() const {
    for (int s : sizes_)
        if (s != sizes_.front()) return std::nullopt;
    return sizes_.front();
}

bool Cover::is_full() const {
    for (EdgeId e = 0; e < base_.edge_count(); ++e) {
        const Edge& ed = base_.edge(e);
        if (sizes_[ed.u] != sizes_[ed.v]) return false;
        if (static_cast<int>(links_[e].size()) != sizes_[ed.u]) return false;
    }
    return true;
}

int Cover::partner(EdgeId e, Vertex from, int i) const {
    const bool from_u = base_.edge(e).u == from;
    for (auto [a, b] : links_[e]) {
        if (from_u && a == i) return b;
        if (!from_u && b == i) return a;
    }
    return -1;
}

std::vector<int> Cover::link_map(EdgeId e, Vertex from) const {
    std::vector<int> out(sizes_[from], -1);
    const bool from_u = base_.edge(e).u == from;
    for (auto [a, b] : links_[e]) {
        const int src = from_u ? a : b;
        const int dst = from_u ? b : a;
        if (src >= 0 && src < static_cast<int>(out.size())) out[src] = dst;
    }
    return out;
}

std::vector<std::string> validate_cover(const Cover& c) {
    std::vector<std::string> report;
    const Graph& g = c.base();
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (c.list_size(v) < 0) report.push_back("vertex " + std::to_string(v) + ": negative list size");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const std::string where = "edge {" + std::to_string(ed.u) + "," + std::to_string(ed.v) + "}";
        std::vector<char> left(std::max(0, c.list_size(ed.u)), 0);
        std::vector<char> right(std::max(0, c.list_size(ed.v)), 0);
        for (auto [i, j] : c.link(e)) {
            const std::string pair = " pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (i < 0 || i >= c.list_size(ed.u) || j < 0 || j >= c.list_size(ed.v)) {
                report.push_back(where + pair + ": index out of range");
                continue;
            }
            if (left[i]++) report.push_back(where + pair + ": left index repeats");
            if (right[j]++) report.push_back(where + pair + ": right index repeats");
        }
    }
    return report;
}

void require_valid(const Cover& c) {
    auto report = validate_cover(c);
    if (!report.empty()) throw ValidationError("invalid cover: " + report.front());
}

Cover full_completion(const Cover& c) {
    require_valid(c);
    const Graph& g = c.base();
    std::vector<Matching> links = c.links();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const int m = c.list_size(ed.u);
        if (c.list_size(ed.v) != m)
            throw ValidationError("full completion needs equal list sizes on edge {" +
                                  std::to_string(ed.u) + "," + std::to_string(ed.v) + "}");
        std::vector<char> lu(m, 0), lv(m, 0);
        for (auto [i, j] : links[e]) lu[i] = lv[j] = 1;
        int j = 0;
        for (int i = 0; i < m; ++i) {
            if (lu[i]) continue;
            while (lv[j]) ++j;
            links[e].emplace_back(i, j++);
        }
    }
    return Cover(g, c.list_sizes(), std::move(links));
}

Cover subcover(const Cover& c, std::span<const Vertex> subset) {
    if (subset.empty()) throw ValidationError("subcover of empty vertex set");
    Graph sub = induced_subgraph(c.base(), subset);
    std::vector<char> in(c.vertex_count(), 0);
    for (Vertex v : subset) in[v] = 1;
    std::vector<int> sizes;
    for (Vertex v = 0; v < c.vertex_count(); ++v)
        if (in[v]) sizes.push_back(c.list_size(v));
    // induced_subgraph keeps the surviving edges in their original order.
    std::vector<Matching> links;
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        const Edge& ed = c.base().edge(e);
        if (in[ed.u] && in[ed.v]) links.push_back(c.link(e));
    }
    return Cover(std::move(sub), std::move(sizes), std::move(links));
}

Relabeling Relabeling::identity(const Cover& c) {
    Relabeling r;
    for (Vertex v = 0; v < c.vertex_count(); ++v) r.perms.push_back(identity_perm(c.list_size(v)));
    return r;
}

Relabeling Relabeling::inverse() const {
    Relabeling r;
    for (const auto& p : perms) {
        std::vector<int> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
        r.perms.push_back(std::move(q));
    }
    return r;
}

Cover relabel(const Cover& c, const Relabeling& r) {
    if (static_cast<int>(r.perms.size()) != c.vertex_count())
        throw ValidationError("relabeling has wrong number of vertices");
    for (Vertex v = 0; v < c.vertex_count(); ++v) {
        const auto& p = r.perms[v];
        if (static_cast<int>(p.size()) != c.list_size(v))
            throw ValidationError("relabeling arity mismatch at vertex " + std::to_string(v));
        std::vector<char> hit(p.size(), 0);
        for (int x : p) {
            if (x < 0 || x >= static_cast<int>(p.size()) || hit[x]++)
                throw ValidationError("relabeling is not a permutation at vertex " + std::to_string(v));
        }
    }
    std::vector<Matching> links;
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        const Edge& ed = c.base().edge(e);
        Matching m;
        for (auto [i, j] : c.link(e)) m.emplace_back(r.perms[ed.u][i], r.perms[ed.v][j]);
        links.push_back(std::move(m));
    }
    return Cover(c.base(), c.list_sizes(), std::move(links));
}

Cover canonical_cover(const Graph& g, int m) {
    if (m < 1) throw ValidationError("fold size must be >= 1");
    Matching id;
    for (int i = 0; i < m; ++i) id.emplace_back(i, i);
    return Cover(g, std::vector<int>(g.vertex_count(), m), std::vector<Matching>(g.edge_count(), id));
}

std::optional<LabelingWitness> detect_canonical(const Cover& c) {
    if (!validate_cover(c).empty() || !c.is_full()) return std::nullopt;
    const auto fold = c.uniform_fold();
    if (!fold) return std::nullopt;
    std::vector<std::vector<int>> perms;
    std::vector<Vertex> comp;
    propagate_forest(c, *fold, std::nullopt, perms, comp);
    for (EdgeId e = 0; e < c.base().edge_count(); ++e)
        if (!edge_identity_after(c, e, perms)) return std::nullopt;
    return LabelingWitness{LabelingKind::canonical, Relabeling{std::move(perms)}, std::nullopt};
}

namespace {

std::vector<EdgeId> edges_lexicographic(const Graph& g) {
    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return g.edge(a) < g.edge(b); });
    return order;
}

// Relabeling with `twist` as the only non-identity link, if possible.
std::optional<Relabeling> twist_at(const Cover& c, int k, EdgeId twist) {
    std::vector<std::vector<int>> perms;
    std::vector<Vertex> comp;
    propagate_forest(c, k, twist, perms, comp);
    for (EdgeId e = 0; e < c.base().edge_count(); ++e)
        if (e != twist && !edge_identity_after(c, e, perms)) return std::nullopt;

    const Edge& ed = c.base().edge(twist);
    if (comp[ed.u] != comp[ed.v]) {
        // Bridge: the v side can be permuted freely, so make the twist the
        // cyclic shift i -> i+1 (mod k).
        std::vector<int> tau(k);  // relabeled u-index -> relabeled v-index
        for (auto [i, j] : c.link(twist)) tau[perms[ed.u][i]] = perms[ed.v][j];
        std::vector<int> pi(k);  // pi[tau[a]] = a + 1
        for (int a = 0; a < k; ++a) pi[tau[a]] = (a + 1) % k;
        const Vertex side = comp[ed.v];
        for (Vertex w = 0; w < c.vertex_count(); ++w)
            if (comp[w] == side)
                for (int& x : perms[w]) x = pi[x];
    }
    if (edge_identity_after(c, twist, perms)) return std::nullopt;
    return Relabeling{std::move(perms)};
}

}  // namespace

std::optional<LabelingWitness> detect_twisted_canonical(const Cover& c) {
    if (!validate_cover(c).empty() || !c.is_full()) return std::nullopt;
    const auto fold = c.uniform_fold();
    if (!fold || *fold < 2) return std::nullopt;
    for (EdgeId e : edges_lexicographic(c.base())) {
        if (auto r = twist_at(c, *fold, e))
            return LabelingWitness{LabelingKind::twisted_canonical, std::move(*r), e};
    }
    return std::nullopt;
}

LabelingWitness tree_labeling(const Cover& c, TreeLabelingMode mode) {
    if (!c.base().is_tree()) throw ValidationError("tree labeling needs a tree base graph");
    require_valid(c);
    const auto fold = c.uniform_fold();
    if (!c.is_full() || !fold) throw ValidationError("tree labeling needs a full cover of uniform fold");
    if (mode == TreeLabelingMode::canonical) {
        auto w = detect_canonical(c);
        if (!w) throw std::logic_error("full cover of a tree without canonical labeling");
        return *w;
    }
    if (*fold < 2) throw ValidationError("twisted labeling needs fold size >= 2");
    if (c.base().edge_count() == 0) throw ValidationError("twisted labeling needs at least one edge");
    const EdgeId first = edges_lexicographic(c.base()).front();
    auto r = twist_at(c, *fold, first);
    if (!r) throw std::logic_error("full cover of a tree without twisted labeling");
    return {LabelingKind::twisted_canonical, std::move(*r), first};
}

Cover make_twister(int half_length, int k) {
    if (half_length < 2) throw ValidationError("twister needs half length m >= 2");
    if (k < 1) throw ValidationError("twister needs fold size k >= 1");
    const int n = 2 * half_length;
    Graph g = cycle_graph(n);
    std::vector<Matching> links(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        for (int l = 0; l < k; ++l) {
            if (ed.u == 0 && ed.v == n - 1)
                links[e].emplace_back((l + 1) % k, l);
            else
                links[e].emplace_back(l, l);
        }
    }
    return Cover(std::move(g), std::vector<int>(n, k), std::move(links));
}

std::optional<std::vector<int>> cycle_monodromy(const Cover& c) {
    const Graph& g = c.base();
    const int n = g.vertex_count();
    if (n < 3 || g.edge_count() != n || !c.is_full() || !c.uniform_fold()) return std::nullopt;
    const int k = *c.uniform_fold();
    std::vector<int> perm = identity_perm(k);  // index at 0 -> index at current vertex
    for (Vertex v = 0; v < n; ++v) {
        const Vertex w = (v + 1) % n;
        const auto e = g.find_edge(v, w);
        if (!e) return std::nullopt;
        const auto step = c.link_map(*e, v);
        for (int& x : perm) x = step[x];
    }
    return perm;
}

std::string to_dot(const Cover& c) {
    std::ostringstream out;
    out << "graph cover {\n  node [shape=point];\n";
    for (Vertex v = 0; v < c.vertex_count(); ++v) {
        out << "  subgraph cluster_" << v << " {\n    style=filled; color=gray80; label=\"v" << v << "\";\n";
        for (int i = 0; i < c.list_size(v); ++i)
            out << "    \"" << v << "_" << i << "\" [xlabel=\"(" << v << "," << i << ")\"];\n";
        out << "  }\n";
    }
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        const Edge& ed = c.base().edge(e);
        for (auto [i, j] : c.link(e))
            out << "  \"" << ed.u << "_" << i << "\" -- \"" << ed.v << "_" << j << "\";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace dpcolor
