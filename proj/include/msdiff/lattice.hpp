#ifndef MSDIFF_LATTICE_HPP
#define MSDIFF_LATTICE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "msdiff/errors.hpp"
#include "msdiff/level_graph.hpp"

namespace msdiff {

// Enhancement lcms over a level passage overflow 64 bits already at moderate
// values, so the lattice arithmetic is exact arbitrary precision throughout.
using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

/// Diagonal of the Smith normal form: non-negative entries, each dividing
/// the next, trailing zeros for rank deficiency. Classical elimination with
/// least-absolute-value pivoting; deterministic.
std::vector<BigInt> smith_normal_form(BigMatrix m);

/// One vertical edge of a level graph, as seen by the twist lattices: its
/// enhancement and the consecutive interval of 1-based level passages it
/// crosses.
struct TwistEdge {
    long long kappa = 0;
    int first_passage = 0;
    int last_passage = 0;

    bool crosses(int i) const { return first_passage <= i && i <= last_passage; }
};

/// The passage-crossing data of a level graph. Horizontal edges are
/// excluded; every passage is crossed by at least one edge.
struct TwistData {
    int levels = 0; // number of level passages L
    std::vector<TwistEdge> edges;
};

/// Extracts the twist data of a graph with at least one level passage.
TwistData twist_data(const EnhancedLevelGraph& g);

struct LatticeIndexResult {
    BigInt ghost_order;              // index of the simple twist group in the twist group
    std::vector<BigInt> snf_diagonal;
};

/// Order of the ghost automorphism group: the twist lattice spanned by
/// (1/kappa_e) over each edge's crossed passages, expressed in the basis
/// w_i / lcm(kappas crossing i), has an integral generator matrix whose
/// Smith diagonal multiplies to the lattice index.
LatticeIndexResult ghost_group_order(const TwistData& td);

/// Number of orbits of the level rotation group Z^L on the prong-matchings
/// prod_e Z/kappa_e, where generator i adds 1 at every edge crossing
/// passage i: the cokernel order of [A^T | diag(kappa)].
BigInt prong_orbit_count(const TwistData& td);

/// Convenience wrappers for whole graphs; purely horizontal graphs have
/// trivial twist data and report order 1.
LatticeIndexResult ghost_of(const EnhancedLevelGraph& g);
BigInt prong_orbits_of(const EnhancedLevelGraph& g);

} // namespace msdiff

#endif
