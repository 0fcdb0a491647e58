#ifndef DPCOLOR_PRODUCT_HPP
#define DPCOLOR_PRODUCT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/solver.hpp"

namespace dpcolor {

/**
 * A cover of M = G □ K_{k,t}.
 *
 * The right factor uses the complete_bipartite numbering: x_j is vertex j
 * (j < k) and y_q is vertex k+q (q < t). With the fiber-major product
 * numbering, the X-fibers occupy flat vertices 0..k|V(G)|-1, in the same
 * order as the vertices of the X-subcover.
 */
class ProductCover {
public:
    // Throws ValidationError unless `graph` is G □ K_{k,t} and `cover` is a
    // valid cover of it.
    ProductCover(ProductGraph graph, Cover cover, int k, int t);

    const ProductGraph& product() const { return graph_; }
    const Graph& factor() const { return graph_.left(); }
    const Cover& cover() const { return cover_; }
    int k() const { return k_; }
    int t() const { return t_; }
    int n() const { return graph_.left().vertex_count(); }

    Vertex x_vertex(Vertex u, int j) const { return graph_.index(u, j); }
    Vertex y_vertex(Vertex u, int q) const { return graph_.index(u, k_ + q); }

    // Subcover induced by V(G) x X, i.e. H_X over M_X.
    const Cover& x_subcover() const { return x_sub_; }
    // Subcover induced by V(G) x {y_q}, a cover of G.
    Cover y_fiber(int q) const;
    Cover x_fiber(int j) const;

private:
    ProductGraph graph_;
    Cover cover_;
    int k_;
    int t_;
    Cover x_sub_;
};

// Cross edges between the copies (u, x_j) and (u, y_q) of one vertex u,
// given as flat product vertices; pairs are oriented from a to b.
struct FiberLink {
    Vertex a;
    Vertex b;
    Matching pairs;
};

ProductCover assemble_product_cover(const Graph& g, int k, int t, const std::vector<Cover>& x_fibers,
                                    const std::vector<Cover>& y_fibers, const std::vector<FiberLink>& links);

// What is left of fiber y_q once every index joined to the X-coloring has
// been deleted. surviving[u] lists, ascending, the original indices of
// (u, y_q) kept as residual indices 0, 1, ...
struct ResidualCover {
    Cover cover;
    std::vector<std::vector<int>> surviving;
};

ResidualCover residual_fiber(const ProductCover& pc, const HColoring& x_coloring, int q);
bool is_volatile(const ProductCover& pc, const HColoring& x_coloring, int q);

inline constexpr std::uint64_t kMaxXColorings = 1'000'000;

struct BadnessVerdict {
    bool bad = false;
    // Present iff !bad: an H-coloring of the whole product.
    std::optional<HColoring> coloring;
    // When bad: witness[i] = a fiber for which the i-th X-coloring (in
    // lexicographic order) is volatile.
    std::vector<int> witness;
    std::uint64_t x_colorings = 0;
};

// Bad iff every X-coloring is volatile for some fiber. Throws
// BudgetExceeded when there are more than `max_x_colorings` X-colorings.
BadnessVerdict badness_verdict(const ProductCover& pc, std::uint64_t max_x_colorings = kMaxXColorings);

struct VolatileCensus {
    std::uint64_t c = 0;       // number of X-colorings
    std::vector<std::uint64_t> z;  // z[q]: X-colorings volatile for fiber q
    bool certificate = false;  // c > max_q z[q] * t, which forces a coloring
};

VolatileCensus volatile_census(const ProductCover& pc, std::uint64_t max_x_colorings = kMaxXColorings);

enum class ShiftRelation { odd_cycle_proper, twister };

// Orbits of colorings under adding a constant to every index mod `modulus`.
// Classes are ordered by their lexicographically smallest member, which
// comes first; member j of a class is that member shifted by j.
struct ShiftClassPartition {
    ShiftRelation relation = ShiftRelation::odd_cycle_proper;
    int modulus = 0;
    std::vector<std::vector<HColoring>> classes;
};

// Proper k-colorings of C_n (n odd) grouped by cyclic color shift.
ShiftClassPartition shift_classes_odd(int n, int k);
// Colorings of a k-fold twister (k >= 3) grouped by index shift.
ShiftClassPartition shift_classes_twister(const Cover& twister);

enum class CycleParity { odd, even };

// Smallest number of fibers per class for which the expected number of
// covered colorings in a class exceeds (k+2)^k - 1, computed exactly.
std::uint64_t c_k(CycleParity parity, int k);
// Same value from the closed-form logarithmic bound, in floating point.
std::uint64_t c_k_closed_form(CycleParity parity, int k);

// Probability that one class coloring is volatile for one dedicated fiber.
double fiber_volatility_probability(CycleParity parity, int k);

/**
 * Deterministic bad (m+k-1)-fold cover of G □ K_{k,t}, m = chi_DP(G).
 *
 * X-fibers copy `minimizing` (an (m+k-1)-fold cover of G). The i-th
 * X-coloring in lexicographic order kills indices 0..k-1 of every vertex of
 * fiber y_i; indices k.. of every Y-fiber carry a copy of `bad` (a bad
 * (m-1)-fold cover of G). Missing covers are computed exhaustively.
 */
ProductCover build_enumerated_bad_cover(const Graph& g, int k, int t, std::optional<Cover> minimizing = {},
                                        std::optional<Cover> bad = {}, std::uint64_t budget = kDefaultBudget);

struct ConstructionParams {
    int m = 1;  // cycle half-length: C_{2m+1} or C_{2m+2}
    int k = 1;
    std::uint64_t t = 1;
    std::uint64_t seed = 0;
    std::uint64_t retry_cap = 10'000;
};

struct RandomConstruction {
    ProductCover cover;
    std::uint64_t seed = 0;
    std::uint64_t fibers_per_class = 0;  // c_k
    std::uint64_t class_count = 0;       // b^k
    std::vector<std::uint64_t> attempts;  // per class
};

// Minimum t accepted by the random constructions.
Count min_t_odd(int m, int k);
Count min_t_even(int m, int k);

// (k+2)-fold cover of C_{2m+1} □ K_{k,t}: canonical fibers, seeded random
// bijections between shift classes and rows on each class's dedicated
// fibers, resampled per class until every class coloring is volatile.
RandomConstruction build_odd_cycle_random_bad_cover(const ConstructionParams& p);
// (k+2)-fold cover of C_{2m+2} □ K_{k,t}: twister X-fibers, paired-row
// Y-fibers, same random scheme.
RandomConstruction build_even_cycle_random_bad_cover(const ConstructionParams& p);

// Y-fiber of the even construction: rows 2l, 2l+1 run along the path
// 0..n-1 as identities and swap on the closing edge; an odd last row runs
// around the cycle as the identity.
Cover paired_rows_cover(int n, int fold);

// Cover of G with the same set of rows deleted at every vertex.
ResidualCover remove_rows(const Cover& c, std::uint64_t row_mask);

// Coloring of a cover of G □ H with every list of size at least
// chi_DP(G) + col(H) - 1, built fiber by fiber along H's degeneracy order.
HColoring upper_bound_coloring(const ProductGraph& product, const Cover& cover, std::uint64_t budget = kDefaultBudget);

}  // namespace dpcolor

#endif  // DPCOLOR_PRODUCT_HPP
