#include "dpcolor/product.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dpcolor/error.hpp"
#include "dpcolor/random.hpp"

namespace dpcolor {

namespace {

std::vector<Vertex> range_vertices(Vertex first, int count) {
    std::vector<Vertex> out(count);
    std::iota(out.begin(), out.end(), first);
    return out;
}

// Edge id of the product edge joining (u, x_j) and (u, y_q).
EdgeId cross_edge_id(const ProductGraph& pg, int k, int t, Vertex u, int j, int q) {
    const int n = pg.left().vertex_count();
    const int fiber_edges = (k + t) * pg.left().edge_count();
    return fiber_edges + (j * t + q) * n + u;
}

EdgeId fiber_edge_id(const ProductGraph& pg, int fiber, EdgeId e) { return fiber * pg.left().edge_count() + e; }

Count ipow(const Count& base, unsigned e) { return boost::multiprecision::pow(base, e); }

std::uint64_t to_u64(const Count& c, const char* what) {
    if (c > Count(std::numeric_limits<std::uint64_t>::max()))
        throw BudgetExceeded(std::string(what) + " does not fit in 64 bits", std::numeric_limits<std::uint64_t>::max());
    return static_cast<std::uint64_t>(c);
}

HColoring shifted(const HColoring& h, int j, int k) {
    HColoring out = h;
    for (int& x : out.choice) x = (x + j) % k;
    return out;
}

ShiftClassPartition group_by_shift(std::vector<HColoring> colorings, int k, ShiftRelation rel) {
    std::sort(colorings.begin(), colorings.end());
    std::set<HColoring> pending(colorings.begin(), colorings.end());
    ShiftClassPartition out{rel, k, {}};
    for (const HColoring& h : colorings) {
        if (!pending.count(h)) continue;
        std::vector<HColoring> cls;
        for (int j = 0; j < k; ++j) {
            HColoring s = shifted(h, j, k);
            if (!pending.erase(s)) throw std::logic_error("coloring set is not closed under shifts");
            cls.push_back(std::move(s));
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

// The random scheme shared by both cycle constructions.
struct RandomScheme {
    Graph cycle;
    int fold;
    std::vector<Cover> x_fibers;  // k copies
    Cover y_fiber;
    ShiftClassPartition classes;
};

RandomConstruction run_random_scheme(const RandomScheme& s, const ConstructionParams& p, std::uint64_t c,
                                     const Count& needed_t) {
    const int k = p.k;
    const int fold = s.fold;
    const int n = s.cycle.vertex_count();
    if (p.retry_cap < 1) throw ValidationError("retry cap must be >= 1");
    if (Count(p.t) < needed_t) {
        std::ostringstream msg;
        msg << "t = " << p.t << " is below the required " << needed_t;
        throw ValidationError(msg.str());
    }
    const std::uint64_t b = s.classes.classes.size();
    const std::uint64_t class_count = to_u64(ipow(Count(b), static_cast<unsigned>(k)), "class count");
    if (p.t > static_cast<std::uint64_t>(std::numeric_limits<int>::max() / (n * (k + 1))))
        throw BudgetExceeded("product cover too large", p.t);
    const int t = static_cast<int>(p.t);

    ProductGraph pg(s.cycle, complete_bipartite_graph(k, t));
    std::vector<Matching> links(pg.graph().edge_count());
    for (int j = 0; j < k; ++j)
        for (EdgeId e = 0; e < s.cycle.edge_count(); ++e) links[fiber_edge_id(pg, j, e)] = s.x_fibers[j].link(e);
    for (int q = 0; q < t; ++q)
        for (EdgeId e = 0; e < s.cycle.edge_count(); ++e) links[fiber_edge_id(pg, k + q, e)] = s.y_fiber.link(e);

    // Volatility of a class coloring for a dedicated fiber depends only on
    // the set of rows its sigma-images delete; decide each set once, by
    // searching the residual fiber.
    std::vector<signed char> volatile_rows(std::size_t{1} << fold, -1);
    auto rows_volatile = [&](std::uint64_t mask) {
        auto& slot = volatile_rows[mask];
        if (slot < 0) slot = find_coloring(remove_rows(s.y_fiber, mask).cover) ? 0 : 1;
        return slot == 1;
    };

    const std::uint64_t class_members = to_u64(ipow(Count(fold), static_cast<unsigned>(k)), "class size");
    const CycleParity parity = n % 2 ? CycleParity::odd : CycleParity::even;
    std::vector<std::uint64_t> attempts;
    attempts.reserve(class_count);

    // sigma[l][j][member] = row of fiber l hit by that member of class p_j.
    std::vector<std::vector<std::vector<int>>> sigma(c, std::vector<std::vector<int>>(k));
    std::vector<int> digits(k);
    for (std::uint64_t a = 0; a < class_count; ++a) {
        std::uint64_t rest = a;
        for (int j = k - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(rest % b);
            rest /= b;
        }
        SeededStream rng(p.seed, a);
        std::uint64_t attempt = 0;
        bool success = false;
        while (!success && attempt < p.retry_cap) {
            ++attempt;
            for (std::uint64_t l = 0; l < c; ++l)
                for (int j = 0; j < k; ++j) sigma[l][j] = rng.permutation(fold);
            success = true;
            std::vector<int> member(k, 0);
            for (std::uint64_t sidx = 0; sidx < class_members && success; ++sidx) {
                std::uint64_t r = sidx;
                for (int j = k - 1; j >= 0; --j) {
                    member[j] = static_cast<int>(r % fold);
                    r /= fold;
                }
                bool covered = false;
                for (std::uint64_t l = 0; l < c && !covered; ++l) {
                    std::uint64_t mask = 0;
                    for (int j = 0; j < k; ++j) mask |= std::uint64_t{1} << sigma[l][j][member[j]];
                    covered = rows_volatile(mask);
                }
                success = covered;
            }
        }
        if (!success) {
            std::ostringstream msg;
            msg << "class " << a << " not covered after " << attempt << " attempts; per-fiber volatility probability "
                << fiber_volatility_probability(parity, k)
                << ", fibers per class " << c;
            throw RetryExhausted(msg.str());
        }
        attempts.push_back(attempt);
        for (std::uint64_t l = 0; l < c; ++l) {
            const int q = static_cast<int>(c * a + l);
            for (int j = 0; j < k; ++j) {
                const auto& cls = s.classes.classes[digits[j]];
                for (Vertex u = 0; u < n; ++u) {
                    Matching& mt = links[cross_edge_id(pg, k, t, u, j, q)];
                    for (int member = 0; member < fold; ++member)
                        mt.emplace_back(cls[member].choice[u], sigma[l][j][member]);
                }
            }
        }
    }
    ProductCover pc(pg, Cover(pg.graph(), std::vector<int>(pg.graph().vertex_count(), fold), std::move(links)), k, t);
    return {std::move(pc), p.seed, c, class_count, std::move(attempts)};
}

}  // namespace

ProductCover::ProductCover(ProductGraph graph, Cover cover, int k, int t)
    : graph_(std::move(graph)),
      cover_(std::move(cover)),
      k_(k),
      t_(t),
      x_sub_(cover_) {
    if (k < 1 || t < 0) throw ValidationError("product cover needs k >= 1 and t >= 0");
    if (!(graph_.right() == complete_bipartite_graph(k, t)))
        throw ValidationError("right factor must be K_{k,t} in canonical numbering");
    if (!(cover_.base() == graph_.graph())) throw ValidationError("cover base is not the product graph");
    require_valid(cover_);
    x_sub_ = subcover(cover_, range_vertices(0, k * n()));
}

Cover ProductCover::y_fiber(int q) const {
    if (q < 0 || q >= t_) throw ValidationError("fiber index out of range");
    return subcover(cover_, range_vertices(y_vertex(0, q), n()));
}

Cover ProductCover::x_fiber(int j) const {
    if (j < 0 || j >= k_) throw ValidationError("fiber index out of range");
    return subcover(cover_, range_vertices(x_vertex(0, j), n()));
}

ProductCover assemble_product_cover(const Graph& g, int k, int t, const std::vector<Cover>& x_fibers,
                                    const std::vector<Cover>& y_fibers, const std::vector<FiberLink>& links) {
    if (static_cast<int>(x_fibers.size()) != k || static_cast<int>(y_fibers.size()) != t)
        throw ValidationError("need k X-fiber covers and t Y-fiber covers");
    ProductGraph pg(g, complete_bipartite_graph(k, t));
    const int n = g.vertex_count();
    std::vector<int> sizes(pg.graph().vertex_count());
    std::vector<Matching> all(pg.graph().edge_count());
    auto place = [&](const Cover& f, int fiber) {
        if (!(f.base() == g)) throw ValidationError("fiber cover is not a cover of G");
        require_valid(f);
        for (Vertex u = 0; u < n; ++u) sizes[pg.index(u, fiber)] = f.list_size(u);
        for (EdgeId e = 0; e < g.edge_count(); ++e) all[fiber_edge_id(pg, fiber, e)] = f.link(e);
    };
    for (int j = 0; j < k; ++j) place(x_fibers[j], j);
    for (int q = 0; q < t; ++q) place(y_fibers[q], k + q);
    std::vector<char> used(pg.graph().edge_count(), 0);
    for (const FiberLink& fl : links) {
        const auto e = pg.graph().find_edge(fl.a, fl.b);
        if (!e) throw ValidationError("link matching on a non-edge of the product");
        if (*e < (k + t) * g.edge_count()) throw ValidationError("link matching on a fiber edge; put it in the fiber cover");
        if (used[*e]++) throw ValidationError("two link matchings on the same product edge");
        const bool forward = pg.graph().edge(*e).u == fl.a;
        for (auto [i, j] : fl.pairs) all[*e].push_back(forward ? IndexPair{i, j} : IndexPair{j, i});
    }
    return ProductCover(pg, Cover(pg.graph(), std::move(sizes), std::move(all)), k, t);
}

namespace {

ResidualCover residual_unchecked(const ProductCover& pc, const HColoring& x, int q) {
    const int n = pc.n();
    const Cover& c = pc.cover();
    std::vector<std::vector<int>> surviving(n);
    std::vector<std::vector<int>> rank(n);
    for (Vertex u = 0; u < n; ++u) {
        const Vertex y = pc.y_vertex(u, q);
        std::vector<char> dead(c.list_size(y), 0);
        for (int j = 0; j < pc.k(); ++j) {
            const Vertex xv = pc.x_vertex(u, j);
            const EdgeId e = cross_edge_id(pc.product(), pc.k(), pc.t(), u, j, q);
            const int hit = c.partner(e, xv, x.choice[xv]);
            if (hit >= 0) dead[hit] = 1;
        }
        rank[u].assign(c.list_size(y), -1);
        for (int i = 0; i < c.list_size(y); ++i)
            if (!dead[i]) {
                rank[u][i] = static_cast<int>(surviving[u].size());
                surviving[u].push_back(i);
            }
    }
    const Graph& g = pc.factor();
    std::vector<int> sizes(n);
    for (Vertex u = 0; u < n; ++u) sizes[u] = static_cast<int>(surviving[u].size());
    std::vector<Matching> links(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        for (auto [i, j] : c.link(fiber_edge_id(pc.product(), pc.k() + q, e)))
            if (rank[ed.u][i] >= 0 && rank[ed.v][j] >= 0) links[e].emplace_back(rank[ed.u][i], rank[ed.v][j]);
    }
    return {Cover(g, std::move(sizes), std::move(links)), std::move(surviving)};
}

void require_x_coloring(const ProductCover& pc, const HColoring& x, int q) {
    if (q < 0 || q >= pc.t()) throw ValidationError("fiber index out of range");
    if (!is_coloring(pc.x_subcover(), x)) throw ValidationError("not a coloring of the X-subcover");
}

}  // namespace

ResidualCover residual_fiber(const ProductCover& pc, const HColoring& x_coloring, int q) {
    require_x_coloring(pc, x_coloring, q);
    return residual_unchecked(pc, x_coloring, q);
}

bool is_volatile(const ProductCover& pc, const HColoring& x_coloring, int q) {
    return !find_coloring(residual_fiber(pc, x_coloring, q).cover);
}

namespace {

std::uint64_t guarded_x_count(const ProductCover& pc, std::uint64_t max_x_colorings) {
    const Count c = count_colorings(pc.x_subcover());
    if (c > Count(max_x_colorings))
        throw BudgetExceeded("X-subcover has too many colorings for an exact verdict",
                             c > Count(std::numeric_limits<std::uint64_t>::max())
                                 ? std::numeric_limits<std::uint64_t>::max()
                                 : static_cast<std::uint64_t>(c));
    return static_cast<std::uint64_t>(c);
}

}  // namespace

BadnessVerdict badness_verdict(const ProductCover& pc, std::uint64_t max_x_colorings) {
    BadnessVerdict out;
    out.x_colorings = guarded_x_count(pc, max_x_colorings);
    out.bad = true;
    enumerate_colorings(pc.x_subcover(), [&](const HColoring& x) {
        std::vector<std::optional<HColoring>> fiber_colorings(pc.t());
        std::vector<ResidualCover> residuals;
        residuals.reserve(pc.t());
        for (int q = 0; q < pc.t(); ++q) {
            residuals.push_back(residual_unchecked(pc, x, q));
            fiber_colorings[q] = find_coloring(residuals.back().cover);
            if (!fiber_colorings[q]) {
                out.witness.push_back(q);
                return true;
            }
        }
        // Not volatile anywhere: glue the X-coloring to the residual colorings.
        HColoring whole{std::vector<int>(pc.cover().vertex_count(), -1)};
        std::copy(x.choice.begin(), x.choice.end(), whole.choice.begin());
        for (int q = 0; q < pc.t(); ++q)
            for (Vertex u = 0; u < pc.n(); ++u)
                whole.choice[pc.y_vertex(u, q)] = residuals[q].surviving[u][fiber_colorings[q]->choice[u]];
        out.bad = false;
        out.witness.clear();
        out.coloring = std::move(whole);
        return false;
    });
    return out;
}

VolatileCensus volatile_census(const ProductCover& pc, std::uint64_t max_x_colorings) {
    VolatileCensus out;
    out.c = guarded_x_count(pc, max_x_colorings);
    out.z.assign(pc.t(), 0);
    enumerate_colorings(pc.x_subcover(), [&](const HColoring& x) {
        for (int q = 0; q < pc.t(); ++q)
            if (!find_coloring(residual_unchecked(pc, x, q).cover)) ++out.z[q];
        return true;
    });
    const std::uint64_t zmax = out.z.empty() ? 0 : *std::max_element(out.z.begin(), out.z.end());
    out.certificate = Count(out.c) > Count(zmax) * pc.t();
    return out;
}

ShiftClassPartition shift_classes_odd(int n, int k) {
    if (n < 3 || n % 2 == 0) throw ValidationError("shift classes need an odd cycle length n >= 3");
    if (k < 1) throw ValidationError("need k >= 1 colors");
    return group_by_shift(all_colorings(canonical_cover(cycle_graph(n), k)), k, ShiftRelation::odd_cycle_proper);
}

ShiftClassPartition shift_classes_twister(const Cover& twister) {
    const auto fold = twister.uniform_fold();
    const int n = twister.vertex_count();
    if (!fold || n < 4 || n % 2 != 0 || !(twister == make_twister(n / 2, *fold)))
        throw ValidationError("input is not a twister cover");
    if (*fold < 3) throw ValidationError("twister shift classes need fold size >= 3");
    return group_by_shift(all_colorings(twister), *fold, ShiftRelation::twister);
}

std::uint64_t c_k(CycleParity parity, int k) {
    if (k < 1) throw ValidationError("c_k needs k >= 1");
    const int f = k + 2;
    const Count classes = ipow(Count(f), static_cast<unsigned>(k));  // (k+2)^k
    Count fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;  // k!
    // Volatility probability per fiber as hit/den.
    Count hit, den;
    if (parity == CycleParity::odd) {
        hit = fact * (k + 1) * (k + 2);  // (k+2)!
        den = 2 * classes;
    } else {
        hit = Count(f / 2) * fact;
        den = classes;
    }
    // Want classes * (1 - p)^c < 1, i.e. classes * (den - hit)^c < den^c.
    const Count miss = den - hit;
    auto good = [&](std::uint64_t c) {
        return classes * ipow(miss, static_cast<unsigned>(c)) < ipow(den, static_cast<unsigned>(c));
    };
    std::uint64_t hi = 1;
    while (!good(hi)) hi *= 2;
    std::uint64_t lo = hi / 2;  // good(lo) is false unless lo == 0
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (good(mid) ? hi : lo) = mid;
    }
    return hi;
}

namespace {

// Smallest integer strictly greater than x; x within rounding of an integer
// counts as that integer.
std::uint64_t smallest_above(double x) { return static_cast<std::uint64_t>(std::floor(x + 1e-9)) + 1; }

}  // namespace

std::uint64_t c_k_closed_form(CycleParity parity, int k) {
    if (k < 1) throw ValidationError("c_k needs k >= 1");
    const double kk = k, l = std::log(k + 2.0);
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    if (parity == CycleParity::odd) {
        if (k == 1) return 1;
        const double denom = std::log(2.0) + (kk - 1) * l - std::log(2 * std::pow(k + 2.0, k - 1) - fact * (k + 1));
        return smallest_above(kk * l / denom);
    }
    const double denom = kk * l - std::log(std::pow(k + 2.0, k) - ((k + 2) / 2) * fact);
    return smallest_above(kk * l / denom);
}

double fiber_volatility_probability(CycleParity parity, int k) {
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double classes = std::pow(k + 2.0, k);
    if (parity == CycleParity::odd) return fact * (k + 1) * (k + 2) / (2 * classes);
    return ((k + 2) / 2) * fact / classes;
}

ProductCover build_enumerated_bad_cover(const Graph& g, int k, int t, std::optional<Cover> minimizing,
                                        std::optional<Cover> bad, std::uint64_t budget) {
    if (k < 1 || t < 1) throw ValidationError("need k >= 1 and t >= 1");
    if (!minimizing || !bad) {
        const auto chi = chi_dp_exhaustive(g, budget);
        const int m = static_cast<int>(chi.value);
        if (!bad) bad = chi.witness;
        if (!minimizing) minimizing = pdp_exhaustive(g, m + k - 1, budget).witness;
    }
    if (!(minimizing->base() == g) || !(bad->base() == g)) throw ValidationError("fiber covers must be covers of G");
    require_valid(*minimizing);
    require_valid(*bad);
    const auto fold = minimizing->uniform_fold();
    const auto bad_fold = bad->uniform_fold();
    if (!fold || !bad_fold || *bad_fold != *fold - k)
        throw ValidationError("need a uniform f-fold minimizing cover and a uniform (f-k)-fold bad cover");
    if (find_coloring(*bad)) throw ValidationError("the (f-k)-fold cover is not bad");
    const Count d = count_colorings(*minimizing);
    const Count need = ipow(d, static_cast<unsigned>(k));
    if (Count(t) < need) {
        std::ostringstream msg;
        msg << "t = " << t << " is below the required " << need;
        throw ValidationError(msg.str());
    }

    ProductGraph pg(g, complete_bipartite_graph(k, t));
    const int n = g.vertex_count();
    std::vector<Matching> links(pg.graph().edge_count());
    for (int j = 0; j < k; ++j)
        for (EdgeId e = 0; e < g.edge_count(); ++e) links[fiber_edge_id(pg, j, e)] = minimizing->link(e);
    for (int q = 0; q < t; ++q)
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            for (auto [i, j] : bad->link(e)) links[fiber_edge_id(pg, k + q, e)].emplace_back(i + k, j + k);

    // X-subcover: k disjoint copies of the minimizing cover at flat 0..kn-1.
    const Cover x_sub =
        subcover(Cover(pg.graph(), std::vector<int>(pg.graph().vertex_count(), *fold), links), range_vertices(0, k * n));
    int i = 0;
    enumerate_colorings(x_sub, [&](const HColoring& x) {
        for (Vertex u = 0; u < n; ++u)
            for (int j = 0; j < k; ++j)
                links[cross_edge_id(pg, k, t, u, j, i)].emplace_back(x.choice[pg.index(u, j)], j);
        ++i;
        return true;
    });
    return ProductCover(pg, Cover(pg.graph(), std::vector<int>(pg.graph().vertex_count(), *fold), std::move(links)), k,
                        t);
}

Count min_t_odd(int m, int k) {
    if (m < 1 || k < 1) throw ValidationError("need m >= 1 and k >= 1");
    const int n = 2 * m + 1;
    const Count d = ipow(Count(k + 1), n) - (k + 1);
    return Count(c_k(CycleParity::odd, k)) * ipow(d / (k + 2), static_cast<unsigned>(k));
}

Count min_t_even(int m, int k) {
    if (m < 1 || k < 1) throw ValidationError("need m >= 1 and k >= 1");
    const int n = 2 * m + 2;
    const Count d = ipow(Count(k + 1), n) - 1;
    return Count(c_k(CycleParity::even, k)) * ipow(d / (k + 2), static_cast<unsigned>(k));
}

RandomConstruction build_odd_cycle_random_bad_cover(const ConstructionParams& p) {
    if (p.m < 1 || p.k < 1) throw ValidationError("need m >= 1 and k >= 1");
    const int n = 2 * p.m + 1;
    const int fold = p.k + 2;
    if (fold > 8) throw ValidationError("fold sizes above 8 are not supported by the random constructions");
    const Count needed = min_t_odd(p.m, p.k);
    if (Count(p.t) < needed) {
        std::ostringstream msg;
        msg << "t = " << p.t << " is below the required " << needed;
        throw ValidationError(msg.str());
    }
    Graph cyc = cycle_graph(n);
    RandomScheme s{cyc, fold, std::vector<Cover>(p.k, canonical_cover(cyc, fold)), canonical_cover(cyc, fold),
                   shift_classes_odd(n, fold)};
    return run_random_scheme(s, p, c_k(CycleParity::odd, p.k), needed);
}

RandomConstruction build_even_cycle_random_bad_cover(const ConstructionParams& p) {
    if (p.m < 1 || p.k < 1) throw ValidationError("need m >= 1 and k >= 1");
    const int n = 2 * p.m + 2;
    const int fold = p.k + 2;
    if (fold > 8) throw ValidationError("fold sizes above 8 are not supported by the random constructions");
    const Count needed = min_t_even(p.m, p.k);
    if (Count(p.t) < needed) {
        std::ostringstream msg;
        msg << "t = " << p.t << " is below the required " << needed;
        throw ValidationError(msg.str());
    }
    Cover tw = make_twister(p.m + 1, fold);
    RandomScheme s{tw.base(), fold, std::vector<Cover>(p.k, tw), paired_rows_cover(n, fold),
                   shift_classes_twister(tw)};
    return run_random_scheme(s, p, c_k(CycleParity::even, p.k), needed);
}

Cover paired_rows_cover(int n, int fold) {
    if (fold < 1) throw ValidationError("fold size must be >= 1");
    Graph g = cycle_graph(n);
    std::vector<Matching> links(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const bool closing = ed.u == 0 && ed.v == n - 1;
        for (int l = 0; 2 * l + 1 < fold; ++l) {
            if (closing) {
                links[e].emplace_back(2 * l, 2 * l + 1);
                links[e].emplace_back(2 * l + 1, 2 * l);
            } else {
                links[e].emplace_back(2 * l, 2 * l);
                links[e].emplace_back(2 * l + 1, 2 * l + 1);
            }
        }
        if (fold % 2 == 1) links[e].emplace_back(fold - 1, fold - 1);
    }
    return Cover(std::move(g), std::vector<int>(n, fold), std::move(links));
}

ResidualCover remove_rows(const Cover& c, std::uint64_t row_mask) {
    const int n = c.vertex_count();
    std::vector<std::vector<int>> surviving(n), rank(n);
    std::vector<int> sizes(n);
    for (Vertex u = 0; u < n; ++u) {
        rank[u].assign(c.list_size(u), -1);
        for (int i = 0; i < c.list_size(u); ++i)
            if (!(i < 64 && (row_mask >> i & 1))) {
                rank[u][i] = static_cast<int>(surviving[u].size());
                surviving[u].push_back(i);
            }
        sizes[u] = static_cast<int>(surviving[u].size());
    }
    std::vector<Matching> links(c.base().edge_count());
    for (EdgeId e = 0; e < c.base().edge_count(); ++e) {
        const Edge& ed = c.base().edge(e);
        for (auto [i, j] : c.link(e))
            if (rank[ed.u][i] >= 0 && rank[ed.v][j] >= 0) links[e].emplace_back(rank[ed.u][i], rank[ed.v][j]);
    }
    return {Cover(c.base(), std::move(sizes), std::move(links)), std::move(surviving)};
}

HColoring upper_bound_coloring(const ProductGraph& product, const Cover& cover, std::uint64_t budget) {
    if (!(cover.base() == product.graph())) throw ValidationError("cover base is not the product graph");
    require_valid(cover);
    const Graph& g = product.left();
    const Graph& h = product.right();
    const int chi = static_cast<int>(chi_dp_exhaustive(g, budget).value);
    const DegeneracyOrdering order = coloring_number(h);
    const int need = chi + order.width - 1;
    for (int s : cover.list_sizes())
        if (s < need)
            throw ValidationError("list size " + std::to_string(s) + " below chi_DP(G) + col(H) - 1 = " +
                                  std::to_string(need));

    const int n = g.vertex_count();
    HColoring out{std::vector<int>(product.graph().vertex_count(), -1)};
    const Graph& flat = product.graph();
    for (Vertex v : order.ordering) {
        // Per copy of u: drop indices joined to already-colored vertices,
        // keep the first chi of the rest.
        std::vector<std::vector<int>> kept(n);
        std::vector<std::vector<int>> rank(n);
        for (Vertex u = 0; u < n; ++u) {
            const Vertex w = product.index(u, v);
            std::vector<char> blocked(cover.list_size(w), 0);
            for (const Incidence& inc : flat.incident(w)) {
                const int chosen = out.choice[inc.neighbor];
                if (chosen < 0) continue;
                const int j = cover.partner(inc.edge, inc.neighbor, chosen);
                if (j >= 0) blocked[j] = 1;
            }
            rank[u].assign(cover.list_size(w), -1);
            for (int i = 0; i < cover.list_size(w) && static_cast<int>(kept[u].size()) < chi; ++i)
                if (!blocked[i]) {
                    rank[u][i] = static_cast<int>(kept[u].size());
                    kept[u].push_back(i);
                }
            if (static_cast<int>(kept[u].size()) < chi) throw std::logic_error("degeneracy bound violated");
        }
        std::vector<Matching> links(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            const EdgeId fe = *flat.find_edge(product.index(ed.u, v), product.index(ed.v, v));
            const bool forward = flat.edge(fe).u == product.index(ed.u, v);
            for (auto [a, b] : cover.link(fe)) {
                const int i = forward ? a : b;
                const int j = forward ? b : a;
                if (rank[ed.u][i] >= 0 && rank[ed.v][j] >= 0) links[e].emplace_back(rank[ed.u][i], rank[ed.v][j]);
            }
        }
        const auto fiber = find_coloring(Cover(g, std::vector<int>(n, chi), std::move(links)));
        if (!fiber) throw std::logic_error("chi_DP-fold fiber cover without a coloring");
        for (Vertex u = 0; u < n; ++u) out.choice[product.index(u, v)] = kept[u][fiber->choice[u]];
    }
    return out;
}

}  // namespace dpcolor
