#ifndef MSDIFF_POINCARE_HPP
#define MSDIFF_POINCARE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "msdiff/level_graph.hpp"
#include "msdiff/strata_geometry.hpp"

namespace msdiff {

/// Betti-number polynomial: c[k] = dim H^k. The smooth proper models here
/// have even Tate-type cohomology, so odd entries are always zero.
struct Poly {
    std::vector<long long> c;

    long long coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : 0; }
    int degree() const;
    void trim();
    bool palindromic() const;
    bool unit_ends() const { return coeff(0) == 1 && coeff(degree()) == 1; }
    bool even_support() const;

    Poly& operator+=(const Poly& o);
    Poly operator*(const Poly& o) const;
    /// this * t^k
    Poly shifted(int k) const;
    bool operator==(const Poly& o) const;
    std::string str() const; // e.g. "1 + 8 t^2 + t^4"
};

/// Poincare polynomial of the Deligne-Mumford space of n-pointed genus-0
/// curves, from the stratum sum of point-count polynomials of the open
/// configuration spaces.
Poly poincare_m0bar(int n, const EnumLimits& limits = {});

enum class TieBreak { lex, revlex, shuffle };

struct TowerOptions {
    TieBreak tie_break = TieBreak::lex;
    std::uint64_t seed = 0;
    /// The tower for the smooth n = 5, 6 signatures outside (0^{n-1},-2) and
    /// (0^{n-2},-1^2) is validated only by cross-checks; it must be opted
    /// into explicitly.
    bool allow_experimental = false;
};

struct BlowupStep {
    std::vector<std::uint32_t> center; // bipartition masks of the image stratum, sorted
    int codim = 0;                     // codimension of the center, = center.size()
    EnhancedLevelGraph divisor;        // the exceptional divisor this center comes from
    bool inverted = false;             // leaves above the root
};

struct BlowupPlan {
    Signature mu;
    std::vector<BlowupStep> steps;
};

/// Orders the exceptional divisors so that every contained center comes
/// before any center containing it, extending the intersection partial
/// order by the requested tie-break. Requires a smooth signature.
BlowupPlan build_blowup_plan(const Signature& mu, const TowerOptions& opts = {},
                             const EnumLimits& limits = {});

/// Betti numbers of the multiscale compactification for a smooth signature,
/// by running the blowup tower over the base space and accumulating the
/// blowup contributions of every (properly transformed) center.
Poly poincare_multiscale(const Signature& mu, const TowerOptions& opts = {},
                         const EnumLimits& limits = {});

/// (expected, computed) second Betti number: the Picard rank of the base
/// plus the number of exceptional divisors, against the tower output.
std::pair<long long, long long> h2_crosscheck(const Signature& mu, const TowerOptions& opts = {},
                                              const EnumLimits& limits = {});

} // namespace msdiff

#endif
