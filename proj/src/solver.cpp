#include "dpcolor/solver.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <deque>
#include <numeric>

#include "dpcolor/error.hpp"

namespace dpcolor {

namespace {

using Mask = std::uint64_t;

Mask full_mask(int size) { return size >= 64 ? ~Mask{0} : ((Mask{1} << size) - 1); }

struct Arc {
    Vertex to;
    const std::vector<int>* map;  // index at this vertex -> index at `to`, or -1
};

/**
 * Compiled form of a cover: bitmask domains plus, per vertex, the arcs
 * that carry cross edges. Assignments prune neighbour domains (forward
 * checking) and are undone from a trail.
 */
class Engine {
public:
    explicit Engine(const Cover& c) : n_(c.vertex_count()), arcs_(n_), maps_(2 * c.base().edge_count()) {
        require_valid(c);
        dom_.resize(n_);
        for (Vertex v = 0; v < n_; ++v) {
            if (c.list_size(v) > 64) throw ValidationError("list sizes above 64 are not supported");
            dom_[v] = full_mask(c.list_size(v));
        }
        const Graph& g = c.base();
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            maps_[2 * e] = c.link_map(e, ed.u);
            maps_[2 * e + 1] = c.link_map(e, ed.v);
            arcs_[ed.u].push_back({ed.v, &maps_[2 * e]});
            arcs_[ed.v].push_back({ed.u, &maps_[2 * e + 1]});
        }
        value_.assign(n_, -1);
        unassigned_ = n_;
        live_edges_ = g.edge_count();
    }

    int size() const { return n_; }
    bool assigned(Vertex v) const { return value_[v] >= 0; }
    Mask domain(Vertex v) const { return dom_[v]; }
    int unassigned() const { return unassigned_; }
    int live_edges() const { return live_edges_; }
    std::vector<int> values() const { return value_; }

    std::size_t mark() const { return trail_.size(); }

    // Returns false on a domain wipe-out; the caller still undoes to mark.
    bool assign(Vertex v, int i) {
        trail_.push_back({v, dom_[v]});
        value_[v] = i;
        dom_[v] = Mask{1} << i;
        --unassigned_;
        bool ok = true;
        for (const Arc& a : arcs_[v]) {
            if (assigned(a.to)) continue;
            --live_edges_;
            const int j = (*a.map)[i];
            if (j < 0 || !(dom_[a.to] >> j & 1)) continue;
            trail_.push_back({a.to, dom_[a.to]});
            dom_[a.to] &= ~(Mask{1} << j);
            if (dom_[a.to] == 0) ok = false;
        }
        return ok;
    }

    void undo(std::size_t to, Vertex v) {
        while (trail_.size() > to) {
            auto [w, old] = trail_.back();
            trail_.pop_back();
            dom_[w] = old;
        }
        value_[v] = -1;
        ++unassigned_;
        for (const Arc& a : arcs_[v])
            if (!assigned(a.to)) ++live_edges_;
    }

    // Unassigned vertex with the fewest remaining indices, lowest index on
    // ties; -1 if none.
    Vertex pick_smallest_domain() const {
        Vertex best = -1;
        int best_size = 65;
        for (Vertex v = 0; v < n_; ++v) {
            if (assigned(v)) continue;
            const int s = std::popcount(dom_[v]);
            if (s < best_size) {
                best = v;
                best_size = s;
                if (s <= 1) break;
            }
        }
        return best;
    }

private:
    struct Saved {
        Vertex v;
        Mask dom;
    };
    int n_;
    std::vector<std::vector<Arc>> arcs_;
    std::vector<std::vector<int>> maps_;
    std::vector<Mask> dom_;
    std::vector<int> value_;
    std::vector<Saved> trail_;
    int unassigned_ = 0;
    int live_edges_ = 0;
};

struct StatsScope {
    SearchStats* stats;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~StatsScope() {
        if (stats) stats->elapsed += std::chrono::steady_clock::now() - start;
    }
};

bool search_one(Engine& eng, SearchStats& st) {
    const Vertex v = eng.pick_smallest_domain();
    if (v < 0) return true;
    Mask d = eng.domain(v);
    while (d) {
        const int i = std::countr_zero(d);
        d &= d - 1;
        ++st.nodes;
        const auto mk = eng.mark();
        if (eng.assign(v, i) && search_one(eng, st)) return true;
        eng.undo(mk, v);
        ++st.backtracks;
    }
    return false;
}

Count search_count(Engine& eng, SearchStats& st) {
    if (eng.unassigned() == 0) return 1;
    if (eng.live_edges() == 0) {
        // Remaining vertices are pairwise unlinked: domains are independent.
        Count prod = 1;
        for (Vertex w = 0; w < eng.size(); ++w)
            if (!eng.assigned(w)) prod *= std::popcount(eng.domain(w));
        return prod;
    }
    const Vertex v = eng.pick_smallest_domain();
    Count total = 0;
    Mask d = eng.domain(v);
    while (d) {
        const int i = std::countr_zero(d);
        d &= d - 1;
        ++st.nodes;
        const auto mk = eng.mark();
        if (eng.assign(v, i)) total += search_count(eng, st);
        eng.undo(mk, v);
        ++st.backtracks;
    }
    return total;
}

bool search_lex(Engine& eng, Vertex v, const std::function<bool(const HColoring&)>& visit) {
    if (v == eng.size()) return visit(HColoring{eng.values()});
    Mask d = eng.domain(v);
    while (d) {
        const int i = std::countr_zero(d);
        d &= d - 1;
        const auto mk = eng.mark();
        const bool ok = eng.assign(v, i);
        const bool go_on = !ok || search_lex(eng, v + 1, visit);
        eng.undo(mk, v);
        if (!go_on) return false;
    }
    return true;
}

// Cycle in canonical (or any) numbering: the vertex sequence walking from
// 0 toward its lower neighbour first. Empty if the base is not one cycle.
std::vector<Vertex> cycle_walk(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 3 || g.edge_count() != n || !g.is_connected()) return {};
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) != 2) return {};
    std::vector<Vertex> walk{0};
    Vertex prev = -1, cur = 0;
    for (int step = 1; step < n; ++step) {
        Vertex next = -1;
        for (const Incidence& inc : g.incident(cur))
            if (inc.neighbor != prev && (next < 0 || inc.neighbor < next)) next = inc.neighbor;
        prev = cur;
        cur = next;
        walk.push_back(cur);
    }
    return walk;
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
    std::vector<int> comp(g.vertex_count(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (comp[s] >= 0) continue;
        out.emplace_back();
        std::vector<Vertex> stack{s};
        comp[s] = static_cast<int>(out.size()) - 1;
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            out.back().push_back(x);
            for (const Incidence& inc : g.incident(x))
                if (comp[inc.neighbor] < 0) {
                    comp[inc.neighbor] = comp[s];
                    stack.push_back(inc.neighbor);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

std::vector<std::vector<int>> all_permutations(int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::uint64_t saturating(const Count& c) {
    return c > Count(std::numeric_limits<std::uint64_t>::max()) ? std::numeric_limits<std::uint64_t>::max()
                                                                : static_cast<std::uint64_t>(c);
}

}  // namespace

bool is_coloring(const Cover& c, const HColoring& h) {
    if (static_cast<int>(h.choice.size()) != c.vertex_count()) return false;
    for (Vertex v = 0; v < c.vertex_count(); ++v)
        if (h.choice[v] < 0 || h.choice[v] >= c.list_size(v)) return false;
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        const Edge& ed = c.base().edge(e);
        for (auto [i, j] : c.link(e))
            if (h.choice[ed.u] == i && h.choice[ed.v] == j) return false;
    }
    return true;
}

std::optional<HColoring> find_coloring(const Cover& c, SearchStats* stats) {
    StatsScope scope{stats};
    Engine eng(c);
    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    for (Vertex v = 0; v < eng.size(); ++v)
        if (eng.domain(v) == 0) return std::nullopt;
    if (!search_one(eng, st)) return std::nullopt;
    return HColoring{eng.values()};
}

Count count_colorings_backtracking(const Cover& c, SearchStats* stats) {
    if (c.base().component_count() > 1) {
        // Colorings of disjoint components multiply.
        require_valid(c);
        Count prod = 1;
        for (const auto& part : components(c.base())) {
            prod *= count_colorings_backtracking(subcover(c, part), stats);
            if (prod == 0) break;
        }
        return prod;
    }
    StatsScope scope{stats};
    Engine eng(c);
    SearchStats local;
    SearchStats& st = stats ? *stats : local;
    for (Vertex v = 0; v < eng.size(); ++v)
        if (eng.domain(v) == 0) return 0;
    return search_count(eng, st);
}

std::optional<Count> count_cycle_transfer(const Cover& c) {
    const auto walk = cycle_walk(c.base());
    if (walk.empty()) return std::nullopt;
    require_valid(c);
    const Graph& g = c.base();
    const int n = g.vertex_count();
    const int s0 = c.list_size(walk[0]);
    // acc[a][b]: walks from index a at walk[0] to index b at the current vertex.
    std::vector<std::vector<Count>> acc(s0, std::vector<Count>(s0, 0));
    for (int a = 0; a < s0; ++a) acc[a][a] = 1;
    for (int step = 0; step < n; ++step) {
        const Vertex from = walk[step];
        const Vertex to = walk[(step + 1) % n];
        const EdgeId e = *g.find_edge(from, to);
        const auto map = c.link_map(e, from);
        const int sf = c.list_size(from), st = c.list_size(to);
        std::vector<std::vector<Count>> next(s0, std::vector<Count>(st, 0));
        for (int a = 0; a < s0; ++a) {
            Count row_sum = 0;
            for (int x = 0; x < sf; ++x) row_sum += acc[a][x];
            for (int b = 0; b < st; ++b) next[a][b] = row_sum;
            for (int x = 0; x < sf; ++x)
                if (map[x] >= 0) next[a][map[x]] -= acc[a][x];
        }
        acc = std::move(next);
    }
    Count trace = 0;
    for (int a = 0; a < s0; ++a) trace += acc[a][a];
    return trace;
}

Count count_colorings(const Cover& c, SearchStats* stats) {
    if (auto fast = count_cycle_transfer(c)) return *fast;
    return count_colorings_backtracking(c, stats);
}

void enumerate_colorings(const Cover& c, const std::function<bool(const HColoring&)>& visit) {
    Engine eng(c);
    for (Vertex v = 0; v < eng.size(); ++v)
        if (eng.domain(v) == 0) return;
    search_lex(eng, 0, visit);
}

std::vector<HColoring> all_colorings(const Cover& c) {
    std::vector<HColoring> out;
    enumerate_colorings(c, [&](const HColoring& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

std::optional<HColoring> greedy_coloring(const Cover& c, std::span<const Vertex> ordering) {
    require_valid(c);
    const int n = c.vertex_count();
    if (static_cast<int>(ordering.size()) != n) throw ValidationError("ordering must list every vertex once");
    HColoring h{std::vector<int>(n, -1)};
    for (Vertex v : ordering) {
        if (v < 0 || v >= n || h.choice[v] >= 0) throw ValidationError("ordering must be a permutation");
        std::vector<char> blocked(c.list_size(v), 0);
        for (const Incidence& inc : c.base().incident(v)) {
            const int chosen = h.choice[inc.neighbor];
            if (chosen < 0) continue;
            const int j = c.partner(inc.edge, inc.neighbor, chosen);
            if (j >= 0) blocked[j] = 1;
        }
        const auto it = std::find(blocked.begin(), blocked.end(), 0);
        if (it == blocked.end()) return std::nullopt;
        h.choice[v] = static_cast<int>(it - blocked.begin());
    }
    return h;
}

NormalizedCoverSpace::NormalizedCoverSpace(Graph g, int m) : g_(std::move(g)), m_(m) {
    if (m < 1) throw ValidationError("fold size must be >= 1");
    if (m > 8) throw ValidationError("exhaustive search supports fold sizes up to 8");
    std::vector<char> seen(g_.vertex_count(), 0), tree(g_.edge_count(), 0);
    std::deque<Vertex> queue;
    for (Vertex root = 0; root < g_.vertex_count(); ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        queue.push_back(root);
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop_front();
            for (const Incidence& inc : g_.incident(x))
                if (!seen[inc.neighbor]) {
                    seen[inc.neighbor] = 1;
                    tree[inc.edge] = 1;
                    queue.push_back(inc.neighbor);
                }
        }
    }
    for (EdgeId e = 0; e < g_.edge_count(); ++e)
        if (!tree[e]) free_.push_back(e);
    perms_ = all_permutations(m_);
}

Count NormalizedCoverSpace::size() const {
    return boost::multiprecision::pow(Count(perms_.size()), static_cast<unsigned>(free_.size()));
}

std::uint64_t NormalizedCoverSpace::partition_count() const { return free_.empty() ? 1 : perms_.size(); }

std::uint64_t NormalizedCoverSpace::for_each(std::uint64_t p, const std::function<bool(const Cover&)>& visit) const {
    if (p >= partition_count()) throw ValidationError("partition index out of range");
    Matching id;
    for (int i = 0; i < m_; ++i) id.emplace_back(i, i);
    std::vector<Matching> links(g_.edge_count(), id);
    const std::vector<int> sizes(g_.vertex_count(), m_);
    const std::size_t f = free_.size();
    std::vector<std::size_t> digit(f, 0);
    if (f > 0) digit[0] = static_cast<std::size_t>(p);
    auto set_link = [&](std::size_t slot) {
        Matching& mt = links[free_[slot]];
        const auto& perm = perms_[digit[slot]];
        for (int i = 0; i < m_; ++i) mt[i] = {i, perm[i]};
    };
    for (std::size_t s = 0; s < f; ++s) set_link(s);
    std::uint64_t visited = 0;
    while (true) {
        ++visited;
        if (!visit(Cover(g_, sizes, links))) return visited;
        // Odometer over free edges 1..f-1; edge 0 is pinned by the partition.
        std::size_t s = 1;
        while (s < f) {
            if (++digit[s] < perms_.size()) {
                set_link(s);
                break;
            }
            digit[s] = 0;
            set_link(s);
            ++s;
        }
        if (s >= f) return visited;
    }
}

ExhaustiveResult pdp_exhaustive(const Graph& g, int m, std::uint64_t budget) {
    NormalizedCoverSpace space(g, m);
    const Count total = space.size();
    if (total > Count(budget))
        throw BudgetExceeded("normalized cover space for P_DP exceeds budget", saturating(total));
    std::optional<ExhaustiveResult> best;
    std::uint64_t examined = 0;
    for (std::uint64_t p = 0; p < space.partition_count(); ++p) {
        examined += space.for_each(p, [&](const Cover& c) {
            Count k = count_colorings(c);
            if (!best || k < best->value) best = ExhaustiveResult{k, c, 0};
            return best->value != 0;
        });
        if (best && best->value == 0) break;
    }
    best->covers_examined = examined;
    return std::move(*best);
}

ExhaustiveResult chi_dp_exhaustive(const Graph& g, std::uint64_t budget) {
    const int upper = coloring_number(g).width;
    Cover bad(g, std::vector<int>(g.vertex_count(), 0));
    std::uint64_t examined = 0;
    for (int m = 1; m <= upper; ++m) {
        NormalizedCoverSpace space(g, m);
        const Count total = space.size();
        if (total > Count(budget))
            throw BudgetExceeded("normalized cover space for chi_DP exceeds budget at fold " + std::to_string(m),
                                 saturating(total));
        std::optional<Cover> found;
        for (std::uint64_t p = 0; p < space.partition_count() && !found; ++p) {
            examined += space.for_each(p, [&](const Cover& c) {
                if (!find_coloring(c)) found = c;
                return !found;
            });
        }
        if (!found) return ExhaustiveResult{m, std::move(bad), examined};
        bad = std::move(*found);
    }
    throw std::logic_error("no fold up to col(G) admits colorings of every cover");
}

}  // namespace dpcolor
