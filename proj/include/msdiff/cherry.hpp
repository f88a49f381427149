#ifndef MSDIFF_CHERRY_HPP
#define MSDIFF_CHERRY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "msdiff/level_graph.hpp"
#include "msdiff/signature.hpp"

namespace msdiff {

/// A three-vertex level graph with a root and two leaves on the other level:
/// leaves below the root for the upright cherry, above it when inverted.
/// Masks are 0-based leg bitmasks partitioning {1,...,n}.
struct Cherry {
    std::uint32_t root_legs = 0;
    std::uint32_t left_legs = 0;
    std::uint32_t right_legs = 0;
    bool inverted = false;

    bool is_stable(int n) const;
};

/// The two edge enhancements (a, b) = (|-1 - sum left|, |-1 - sum right|).
std::pair<long long, long long> cherry_enhancements(const Cherry& c, const Signature& mu);

/// Upright: realizable iff the leaf sums are both >= 0 (forcing the root sum
/// <= -2). Inverted: leaf sums both <= -2 (forcing the root sum >= 2).
bool is_cherry_realizable(const Cherry& c, const Signature& mu);

/// Balanced iff the two leaf order sums agree (equivalently a = b).
bool is_balanced(const Cherry& c, const Signature& mu);

/// The cherry as an enhanced level graph (requires realizability).
EnhancedLevelGraph cherry_graph(const Cherry& c, const Signature& mu);

/// First realizable unbalanced (possibly inverted) cherry in a fixed
/// deterministic scan order, if any. Such a cherry certifies that the coarse
/// space is singular.
std::optional<Cherry> find_unbalanced_realizable_cherry(const Signature& mu);

struct SmoothnessVerdict {
    bool smooth = false;
    std::optional<Cherry> witness;      // a realizable unbalanced cherry, when singular
    std::optional<std::string> family;  // matched smooth family tag, when smooth
};

/// Tag of the smooth family containing mu (any order), if mu is one of the
/// classified smooth signatures; universal families are matched first.
std::optional<std::string> match_smooth_family(const Signature& mu);

/// Smoothness of the coarse space. Fast path: a cherry witness settles
/// singularity immediately. Otherwise falls back to the full ghost scan
/// (the authority within enumeration bounds) or, for large n, to the
/// classified families.
SmoothnessVerdict classify_smooth(const Signature& mu, const EnumLimits& limits = {});

/// Ground truth by exhaustive enumeration: smooth iff every stratum of
/// codimension >= 1 has trivial ghost group.
SmoothnessVerdict classify_smooth_full(const Signature& mu, const EnumLimits& limits = {});

} // namespace msdiff

#endif
