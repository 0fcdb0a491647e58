#ifndef DPCOLOR_COVER_HPP
#define DPCOLOR_COVER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

// (i, j): index i in the list of edge.u is joined to index j in the list of
// edge.v. Indices are 0-based.
using IndexPair = std::pair<int, int>;
using Matching = std::vector<IndexPair>;

/**
 * A cover (L, H) of a base graph.
 *
 * Vertex v owns the list {0, ..., list_size(v)-1}. The clique on each list
 * is implicit. For every base edge the cross edges are stored as a matching
 * oriented from edge.u to edge.v and kept sorted by the u-side index, which
 * makes operator== structural equality on a normal form.
 *
 * The constructor only checks arity (one list size per vertex, one matching
 * per edge); the matching and range conditions are checked by
 * validate_cover so that malformed covers can still be inspected.
 */
class Cover {
public:
    Cover(Graph base, std::vector<int> list_sizes, std::vector<Matching> links);
    // No cross edges at all.
    Cover(Graph base, std::vector<int> list_sizes);

    const Graph& base() const { return base_; }
    int vertex_count() const { return base_.vertex_count(); }
    int list_size(Vertex v) const { return sizes_[v]; }
    const std::vector<int>& list_sizes() const { return sizes_; }
    const Matching& link(EdgeId e) const { return links_[e]; }
    const std::vector<Matching>& links() const { return links_; }

    // Fold size if every list has the same size.
    std::optional<int> uniform_fold() const;
    // Every link is a perfect matching between lists of equal size.
    bool is_full() const;

    // Partner of index `i` at endpoint `from` across edge e, or -1.
    int partner(EdgeId e, Vertex from, int i) const;
    // partner() for every index of `from`'s list.
    std::vector<int> link_map(EdgeId e, Vertex from) const;

    friend bool operator==(const Cover&, const Cover&) = default;

private:
    Graph base_;
    std::vector<int> sizes_;
    std::vector<Matching> links_;
};

// Empty when the cover is valid; otherwise one message per violation,
// naming the edge and the offending pair.
std::vector<std::string> validate_cover(const Cover& c);
// Throws ValidationError carrying the first violation.
void require_valid(const Cover& c);

// Completes every link to a perfect matching, pairing unmatched u-side
// indices with unmatched v-side indices in ascending order.
Cover full_completion(const Cover& c);

// Subcover induced by `subset`, over induced_subgraph(base, subset).
Cover subcover(const Cover& c, std::span<const Vertex> subset);

// perms[v][old] = new.
struct Relabeling {
    std::vector<std::vector<int>> perms;

    static Relabeling identity(const Cover& c);
    Relabeling inverse() const;
    friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

Cover relabel(const Cover& c, const Relabeling& r);

enum class LabelingKind { canonical, twisted_canonical };

struct LabelingWitness {
    LabelingKind kind = LabelingKind::canonical;
    Relabeling relabeling;
    std::optional<EdgeId> twist_edge;
};

// Every link the identity matching on m indices.
Cover canonical_cover(const Graph& g, int m);

// A relabeling making every link the identity, if one exists. Requires a
// full cover with uniform fold size; anything else yields nullopt.
std::optional<LabelingWitness> detect_canonical(const Cover& c);

// A relabeling making every link except one (the twist) the identity,
// with the twist a non-identity perfect matching.
std::optional<LabelingWitness> detect_twisted_canonical(const Cover& c);

enum class TreeLabelingMode { canonical, twisted };

// Labeling of a full uniform cover of a tree. Twisted mode uses the
// lexicographically smallest edge as the twist and needs fold size >= 2.
LabelingWitness tree_labeling(const Cover& c, TreeLabelingMode mode);

/**
 * k-fold twister of the cycle C_{2m}, m >= 2.
 *
 * Identity links on the path edges {i, i+1}; on the closing edge {0, 2m-1}
 * index l at vertex 2m-1 is joined to index (l+1) mod k at vertex 0.
 */
Cover make_twister(int half_length, int k);

// Composition of the link permutations walking 0 -> 1 -> ... -> n-1 -> 0
// around a base graph that is a cycle in canonical numbering. Returns the
// permutation of vertex 0's list, or nullopt if the cover is not full and
// uniform or the base is not such a cycle.
std::optional<std::vector<int>> cycle_monodromy(const Cover& c);

// Graphviz rendering: one shaded cluster per list, cross edges only.
std::string to_dot(const Cover& c);

}  // namespace dpcolor

#endif  // DPCOLOR_COVER_HPP
