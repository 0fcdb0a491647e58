#ifndef DPCOLOR_RANDOM_HPP
#define DPCOLOR_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "dpcolor/cover.hpp"

namespace dpcolor {

// SplitMix64 stream. Sampling is done by hand (rejection + Fisher-Yates)
// so a seed yields the same covers on every platform.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        constexpr auto top = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = top - top % n;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(static_cast<std::uint64_t>(i) + 1)]);
        return p;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

// Full `fold`-fold cover with an independent uniform permutation per edge.
inline Cover random_full_cover(const Graph& g, int fold, SeededStream& rng) {
    std::vector<Matching> links(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto p = rng.permutation(fold);
        for (int i = 0; i < fold; ++i) links[e].emplace_back(i, p[i]);
    }
    return Cover(g, std::vector<int>(g.vertex_count(), fold), std::move(links));
}

}  // namespace dpcolor

#endif  // DPCOLOR_RANDOM_HPP
