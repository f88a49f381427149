#ifndef MSDIFF_LEVEL_GRAPH_HPP
#define MSDIFF_LEVEL_GRAPH_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msdiff/errors.hpp"
#include "msdiff/signature.hpp"
#include "msdiff/stable_tree.hpp"

namespace msdiff {

/// Zero/pole orders on the two half edges of every tree edge, stored as
/// (order at edges[e].first, order at edges[e].second). The two orders of an
/// edge sum to -2; an edge is horizontal iff both are -1.
struct HalfEdgeOrders {
    std::vector<std::pair<int, int>> at;

    int at_end(int e, int vertex_is_first) const {
        return vertex_is_first ? at[e].first : at[e].second;
    }
};

/// A stable tree with the derived half-edge orders, a level function
/// normalized to {0,-1,...,-L}, and the per-edge enhancements kappa
/// (kappa = 0 exactly for horizontal edges).
struct EnhancedLevelGraph {
    Signature mu;
    StableTree tree;
    HalfEdgeOrders orders;
    std::vector<int> level; // per vertex, top level = 0
    std::vector<int> kappa; // per edge

    bool is_horizontal(int e) const { return kappa[e] == 0; }
    int horizontal_edges() const;
    /// Number of levels below the top.
    int levels_below_top() const;
    /// Codimension of the stratum: levels below the top plus horizontal edges.
    int codim() const;
    /// Vertex at the upper end of a vertical edge (the end with order >= 0).
    int upper_end(int e) const;
    int lower_end(int e) const;
    /// 1-based level passages crossed by a vertical edge, as [first, last].
    std::pair<int, int> passage_span(int e) const;

    /// Checks every documented invariant; throws precondition_error on failure.
    void validate() const;
};

/// The unique half-edge order assignment determined by the tree and the
/// signature, computed by peeling leaves: at a leaf the lone half edge gets
/// -2 minus the leg orders there, its partner gets -2 minus that, and the
/// partner then acts as a leg on the contracted tree.
HalfEdgeOrders derive_orders(const StableTree& tree, const Signature& mu);

/// All level structures on the tree: surjective level functions onto
/// {0,...,-L} with vertical edges strictly decreasing and horizontal edges
/// level-equal. Never empty for a tree.
std::vector<EnhancedLevelGraph> enumerate_level_structures(const StableTree& tree,
                                                           const HalfEdgeOrders& orders,
                                                           const Signature& mu);

/// All boundary strata compatible with mu, optionally filtered by
/// codimension, sorted by canonical encoding. Codimension 0 is the single
/// open stratum.
std::vector<EnhancedLevelGraph> enumerate_strata(const Signature& mu,
                                                 std::optional<int> codim = std::nullopt,
                                                 const EnumLimits& limits = {});

/// Streaming variant; return false from the visitor to stop early.
void for_each_stratum(const Signature& mu, const std::function<bool(const EnhancedLevelGraph&)>& visit,
                      const EnumLimits& limits = {});

/// Canonical byte encoding: equal iff the graphs are isomorphic by a
/// bijection fixing the leg labels and preserving levels and enhancements.
std::string canonical_form(const EnhancedLevelGraph& g);

/// Undegeneration keeping the given 1-based level passages: contracts every
/// vertical edge crossing none of them and merges the levels in between.
/// Horizontal edges are preserved. keep = {1..L} is the identity.
EnhancedLevelGraph undegenerate(const EnhancedLevelGraph& g, const std::set<int>& keep);

/// Contracts all horizontal edges (used to read off vertical divisors).
EnhancedLevelGraph smooth_horizontal(const EnhancedLevelGraph& g);

/// The horizontal divisor containing the stratum of g that remembers only
/// the given horizontal edge: every other edge contracted, one level.
EnhancedLevelGraph horizontal_divisor_of(const EnhancedLevelGraph& g, int horizontal_edge);

/// Builds the enhanced level graph over a tree with an explicit level
/// function (levels need not be normalized; they are shifted so max = 0).
EnhancedLevelGraph make_level_graph(const StableTree& tree, const Signature& mu,
                                    std::vector<int> levels);

} // namespace msdiff

#endif
