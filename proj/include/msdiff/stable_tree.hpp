#ifndef MSDIFF_STABLE_TREE_HPP
#define MSDIFF_STABLE_TREE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "msdiff/errors.hpp"
#include "msdiff/signature.hpp"

namespace msdiff {

/// A genus-0 stable dual tree: vertices 0..vertex_count-1, tree edges, and a
/// placement of the n labeled legs on the vertices. Stability means every
/// vertex has valence >= 3 counting legs plus edge ends.
struct StableTree {
    int n_legs = 0;
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // unordered pairs (u,v)
    std::vector<int> leg_at;                // 0-based leg -> vertex

    int edge_count() const { return static_cast<int>(edges.size()); }
    int valence(int v) const;
    bool is_stable() const;

    /// Bitmask of 0-based legs sitting directly on vertex v.
    std::uint32_t legs_on(int v) const;

    /// Bitmask of all legs in the component of `end` after removing edge e,
    /// where `end` is edges[e].first or edges[e].second.
    std::uint32_t legs_below(int e, int end) const;

    /// The edge set as leg bipartitions, each encoded as the side that does
    /// not contain leg 0. Laminar, and characterizes the tree up to
    /// label-preserving isomorphism.
    std::vector<std::uint32_t> bipartitions() const;
};

/// Rebuilds the unique stable tree whose edge bipartitions are the given
/// laminar family (each element a nonempty leg mask avoiding leg 0, with
/// 2 <= popcount <= n-2). Vertex order is deterministic.
StableTree tree_from_bipartitions(int n, std::vector<std::uint32_t> family);

/// All stable trees with legs 1..n up to label-preserving isomorphism, in a
/// deterministic order; optionally only those with at most max_edges edges.
std::vector<StableTree> enumerate_stable_trees(int n, std::optional<int> max_edges = std::nullopt,
                                               const EnumLimits& limits = {});

/// True if the two leg masks are compatible as tree bipartitions (given that
/// neither contains leg 0): nested or disjoint.
inline bool bipartitions_compatible(std::uint32_t a, std::uint32_t b) {
    std::uint32_t c = a & b;
    return c == 0 || c == a || c == b;
}

} // namespace msdiff

#endif
