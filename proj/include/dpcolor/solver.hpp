#ifndef DPCOLOR_SOLVER_HPP
#define DPCOLOR_SOLVER_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dpcolor/cover.hpp"

namespace dpcolor {

using Count = boost::multiprecision::cpp_int;

// One list index per base vertex.
struct HColoring {
    std::vector<int> choice;
    friend bool operator==(const HColoring&, const HColoring&) = default;
    friend auto operator<=>(const HColoring&, const HColoring&) = default;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::chrono::nanoseconds elapsed{0};
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// True iff `h` picks an in-range index at every vertex and no chosen pair
// is a cross edge.
bool is_coloring(const Cover& c, const HColoring& h);

// Smallest-remaining-domain backtracking with forward checking. nullopt
// means the search space was exhausted. Lists are limited to 64 indices.
std::optional<HColoring> find_coloring(const Cover& c, SearchStats* stats = nullptr);

// Number of colorings. Uses the transfer-matrix product when the base is a
// single cycle and the backtracking counter otherwise.
Count count_colorings(const Cover& c, SearchStats* stats = nullptr);
Count count_colorings_backtracking(const Cover& c, SearchStats* stats = nullptr);
// trace(prod_i (J - A_i)) around the cycle; nullopt if the base is not a
// single cycle.
std::optional<Count> count_cycle_transfer(const Cover& c);

// Every coloring exactly once in lexicographic order of choice vectors.
// The visitor returns false to stop early.
void enumerate_colorings(const Cover& c, const std::function<bool(const HColoring&)>& visit);
std::vector<HColoring> all_colorings(const Cover& c);

// Picks, vertex by vertex in `ordering`, the smallest index not joined to
// an earlier choice. nullopt if some vertex has nothing left.
std::optional<HColoring> greedy_coloring(const Cover& c, std::span<const Vertex> ordering);

/**
 * The full m-fold covers of a graph whose links on a BFS spanning forest
 * are the identity; every other ("free") edge ranges over all m!
 * permutations.
 *
 * Any m-fold cover is a subcover of a full one with at most as many
 * colorings, and a full cover can be relabeled to be the identity on a
 * spanning forest, so minima and bad covers over this space agree with
 * those over all m-fold covers.
 *
 * The space is split into partition_count() disjoint parts by the
 * permutation of the first free edge, so parts can be swept concurrently.
 */
class NormalizedCoverSpace {
public:
    NormalizedCoverSpace(Graph g, int m);

    const std::vector<EdgeId>& free_edges() const { return free_; }
    Count size() const;
    std::uint64_t partition_count() const;
    // Visits every cover in part `p`; the visitor returns false to stop.
    // Returns the number of covers visited.
    std::uint64_t for_each(std::uint64_t p, const std::function<bool(const Cover&)>& visit) const;

private:
    Graph g_;
    int m_;
    std::vector<EdgeId> free_;
    std::vector<std::vector<int>> perms_;
};

struct ExhaustiveResult {
    Count value;
    Cover witness;
    std::uint64_t covers_examined = 0;
};

// P_DP(G, m), the minimum coloring count over all m-fold covers.
// Throws BudgetExceeded if the normalized space exceeds `budget` covers.
ExhaustiveResult pdp_exhaustive(const Graph& g, int m, std::uint64_t budget = kDefaultBudget);

// chi_DP(G). The witness is a bad cover at fold value-1 (the 0-fold cover
// when value is 1).
ExhaustiveResult chi_dp_exhaustive(const Graph& g, std::uint64_t budget = kDefaultBudget);

}  // namespace dpcolor

#endif  // DPCOLOR_SOLVER_HPP
