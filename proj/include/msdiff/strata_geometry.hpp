#ifndef MSDIFF_STRATA_GEOMETRY_HPP
#define MSDIFF_STRATA_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msdiff/level_graph.hpp"

namespace msdiff {

/// The divisors whose intersection contains a given boundary stratum:
/// one vertical divisor per level passage (in passage order, horizontal
/// edges smoothed away) and one horizontal divisor per horizontal edge.
struct DivisorSet {
    std::vector<EnhancedLevelGraph> vertical; // ordered by passage, top first
    std::vector<EnhancedLevelGraph> horizontal;

    /// Sorted multiset of canonical encodings of all entries.
    std::vector<std::string> key() const;
};

DivisorSet divisors_of(const EnhancedLevelGraph& g);

/// The ordered part of a boundary-stratum identification: vertical divisors
/// in their unique order, horizontal divisors as an unordered set.
struct Profile {
    std::vector<std::string> vertical;   // canonical encodings, top passage first
    std::vector<std::string> horizontal; // sorted canonical encodings

    bool operator==(const Profile& o) const {
        return vertical == o.vertical && horizontal == o.horizontal;
    }
};

struct IntersectionResult {
    Profile profile;
    std::vector<EnhancedLevelGraph> profile_vertical; // graphs matching profile.vertical
    std::vector<EnhancedLevelGraph> profile_horizontal;
    std::vector<EnhancedLevelGraph> realizations; // all codim-r strata with this divisor set
};

/// Resolves the intersection of distinct divisorial graphs: the unique
/// ordering and every stratum realizing it, or nullopt when the intersection
/// is empty (including the repeated-divisor case).
std::optional<IntersectionResult> intersection_profile(const std::vector<EnhancedLevelGraph>& divisors,
                                                       const Signature& mu,
                                                       const EnumLimits& limits = {});

struct UniqueGraphReport {
    long long nonempty_intersections = 0;
    long long strata_checked = 0;
    std::vector<std::string> violations; // descriptions; expected empty
    bool ok() const { return violations.empty(); }
};

/// Exhaustively checks that every set of divisorial graphs with nonempty
/// intersection is compatible with exactly one codimension-r graph and a
/// single ordering.
UniqueGraphReport verify_unique_graph(const Signature& mu, int r, const EnumLimits& limits = {});

struct StratumCensus {
    std::map<int, long long> counts; // codimension -> number of strata
    std::vector<EnhancedLevelGraph> exceptional;
};

/// Stratum counts by codimension plus the divisors whose image stratum has
/// codimension >= 2 (vertical divisors with at least two edges; horizontal
/// divisors are never exceptional).
StratumCensus census(const Signature& mu, const EnumLimits& limits = {});

} // namespace msdiff

#endif
