#include "msdiff/cherry.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>

#include "msdiff/lattice.hpp"

namespace msdiff {

bool Cherry::is_stable(int n) const {
    std::uint32_t all = n >= 32 ? ~0u : (1u << n) - 1u;
    if ((root_legs | left_legs | right_legs) != all) return false;
    if ((root_legs & left_legs) || (root_legs & right_legs) || (left_legs & right_legs)) return false;
    return std::popcount(root_legs) >= 1 && std::popcount(left_legs) >= 2 &&
           std::popcount(right_legs) >= 2;
}

std::pair<long long, long long> cherry_enhancements(const Cherry& c, const Signature& mu) {
    long long a = std::llabs(-1 - mu.mask_sum(c.left_legs));
    long long b = std::llabs(-1 - mu.mask_sum(c.right_legs));
    return {a, b};
}

bool is_cherry_realizable(const Cherry& c, const Signature& mu) {
    long long l = mu.mask_sum(c.left_legs), r = mu.mask_sum(c.right_legs);
    if (!c.inverted) return l >= 0 && r >= 0; // root sum <= -2 follows
    return l <= -2 && r <= -2;                // root sum >= 2 follows
}

bool is_balanced(const Cherry& c, const Signature& mu) {
    return mu.mask_sum(c.left_legs) == mu.mask_sum(c.right_legs);
}

EnhancedLevelGraph cherry_graph(const Cherry& c, const Signature& mu) {
    if (!c.is_stable(mu.n())) throw precondition_error("cherry is not stable");
    if (!is_cherry_realizable(c, mu))
        throw precondition_error("cherry is not realizable for this signature");
    StableTree t;
    t.n_legs = mu.n();
    t.vertex_count = 3;
    t.edges = {{0, 1}, {0, 2}}; // 0 = root, 1 = left, 2 = right
    t.leg_at.resize(t.n_legs);
    for (int l = 0; l < t.n_legs; ++l) {
        if (c.root_legs >> l & 1u) t.leg_at[l] = 0;
        else if (c.left_legs >> l & 1u) t.leg_at[l] = 1;
        else t.leg_at[l] = 2;
    }
    std::vector<int> levels = c.inverted ? std::vector<int>{-1, 0, 0} : std::vector<int>{0, -1, -1};
    return make_level_graph(t, mu, std::move(levels));
}

std::optional<Cherry> find_unbalanced_realizable_cherry(const Signature& mu) {
    const int n = mu.n();
    std::optional<Cherry> found;
    std::vector<int> side(n, 0); // 0 = root, 1 = left, 2 = right

    std::function<bool(int)> scan = [&](int leg) {
        if (leg == n) {
            Cherry c;
            for (int l = 0; l < n; ++l) {
                if (side[l] == 0) c.root_legs |= 1u << l;
                else if (side[l] == 1) c.left_legs |= 1u << l;
                else c.right_legs |= 1u << l;
            }
            if (!c.is_stable(n)) return false;
            // left/right swap changes nothing; keep the lowest leaf leg left
            if ((c.left_legs & -c.left_legs) > (c.right_legs & -c.right_legs)) return false;
            for (bool inv : {false, true}) {
                c.inverted = inv;
                if (is_cherry_realizable(c, mu) && !is_balanced(c, mu)) {
                    found = c;
                    return true;
                }
            }
            return false;
        }
        for (int s = 0; s < 3; ++s) {
            side[leg] = s;
            if (scan(leg + 1)) return true;
        }
        return false;
    };
    scan(0);
    return found;
}

namespace {

using Multiset = std::map<int, int>;

Multiset to_multiset(const std::vector<int>& v) {
    Multiset m;
    for (int x : v) ++m[x];
    return m;
}

Multiset family_tuple(std::initializer_list<int> v) {
    Multiset m;
    for (int x : v) ++m[x];
    return m;
}

} // namespace

std::optional<std::string> match_smooth_family(const Signature& mu) {
    const int n = mu.n();
    Multiset ms = to_multiset(mu.orders());

    // universal families, any n
    {
        Multiset f;
        f[0] = n - 1;
        ++f[-2];
        if (ms == f) return "(0^{n-1},-2)";
        Multiset g;
        g[0] = n - 2;
        g[-1] = 2;
        if (ms == g) return "(0^{n-2},-1^2)";
    }
    if (n <= 4) return "Mbar_{0,n}";

    int amax = 2;
    for (int x : mu.orders()) amax = std::max(amax, std::abs(x) + 2);

    if (n == 6) {
        if (ms == family_tuple({2, 0, -1, -1, -1, -1})) return "(2,0,-1^4)";
        if (ms == family_tuple({1, 0, 0, -1, -1, -1})) return "(1,0^2,-1^3)";
        for (int a = -amax; a <= amax; ++a) {
            int b = -1 - 2 * a;
            if (ms == family_tuple({a, a, a, a, b, b})) return "(a^4,b^2), 2a+b=-1";
        }
        return std::nullopt;
    }
    if (n == 5) {
        for (int a = -amax; a <= amax; ++a) {
            if (ms == family_tuple({2 * a - 1, a - 1, -a, -a, -a})) return "(2a-1,a-1,-a^3)";
            if (ms == family_tuple({a, a, 0, -a - 1, -a - 1})) return "(a^2,0,-a-1^2)";
        }
        for (int a = -amax; a <= amax; ++a)
            if (ms == family_tuple({4 * a - 2, a - 1, -a, -a, -3 * a + 1}))
                return "(4a-2,a-1,-a^2,-3a+1)";
        for (int a = -amax; a <= amax; ++a) {
            if (ms == family_tuple({3 * a - 1, 2 * a - 1, -a, -2 * a, -2 * a}))
                return "(3a-1,2a-1,-a,-2a^2)";
            if (ms == family_tuple({2 * a - 1, 2 * a - 1, -a, -a, -2 * a})) return "(2a-1^2,-a^2,-2a)";
        }
        for (int a = -amax; a <= amax; ++a)
            if (ms == family_tuple({4 * a - 2, -a, -a, -a, -a})) return "(4a-2,-a^4)";
        for (int a = -amax; a <= amax; ++a)
            if (ms == family_tuple({4 * a - 2, 4 * a - 2, -a, -a, -6 * a + 2}))
                return "(4a-2^2,-a^2,-6a+2)";
        for (int a = -amax; a <= amax; ++a) {
            if ((-2 - 2 * a) % 3 != 0) continue;
            int b = (-2 - 2 * a) / 3;
            if (ms == family_tuple({a, a, b, b, b})) return "(a^2,b^3), 2a+3b=-2";
        }
        return std::nullopt;
    }
    return std::nullopt;
}

SmoothnessVerdict classify_smooth_full(const Signature& mu, const EnumLimits& limits) {
    SmoothnessVerdict v;
    v.smooth = true;
    for_each_stratum(
        mu,
        [&](const EnhancedLevelGraph& g) {
            if (g.codim() == 0) return true;
            if (ghost_of(g).ghost_order != 1) {
                v.smooth = false;
                return false;
            }
            return true;
        },
        limits);
    if (v.smooth) v.family = match_smooth_family(mu);
    else v.witness = find_unbalanced_realizable_cherry(mu);
    return v;
}

SmoothnessVerdict classify_smooth(const Signature& mu, const EnumLimits& limits) {
    const int n = mu.n();
    if (n <= 4) {
        SmoothnessVerdict v;
        v.smooth = true;
        v.family = match_smooth_family(mu);
        return v;
    }
    if (n > 14) {
        // cherry scans grow as 3^n; the classified families still decide
        if (auto family = match_smooth_family(mu)) {
            SmoothnessVerdict v;
            v.smooth = true;
            v.family = family;
            return v;
        }
        throw resource_limit_error("smoothness scan capped at n <= 14 outside the known families");
    }
    if (auto w = find_unbalanced_realizable_cherry(mu)) {
        SmoothnessVerdict v;
        v.smooth = false;
        v.witness = w;
        return v;
    }
    auto family = match_smooth_family(mu);
    if (n <= 7) {
        // Ghost scan is the authority within bounds.
        auto v = classify_smooth_full(mu, limits);
        if (v.smooth) v.family = family;
        return v;
    }
    if (family) {
        SmoothnessVerdict v;
        v.smooth = true;
        v.family = family;
        return v;
    }
    return classify_smooth_full(mu, limits);
}

} // namespace msdiff
