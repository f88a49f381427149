#include "msdiff/strata_geometry.hpp"

#include <algorithm>

namespace msdiff {

std::vector<std::string> DivisorSet::key() const {
    std::vector<std::string> k;
    for (const auto& g : vertical) k.push_back(canonical_form(g));
    for (const auto& g : horizontal) k.push_back(canonical_form(g));
    std::sort(k.begin(), k.end());
    return k;
}

DivisorSet divisors_of(const EnhancedLevelGraph& g) {
    DivisorSet out;
    const int L = g.levels_below_top();
    for (int i = 1; i <= L; ++i) out.vertical.push_back(smooth_horizontal(undegenerate(g, {i})));
    for (int e = 0; e < g.tree.edge_count(); ++e)
        if (g.is_horizontal(e)) out.horizontal.push_back(horizontal_divisor_of(g, e));
    return out;
}

std::optional<IntersectionResult> intersection_profile(const std::vector<EnhancedLevelGraph>& divisors,
                                                       const Signature& mu, const EnumLimits& limits) {
    if (divisors.empty()) throw precondition_error("intersection_profile: need at least one divisor");
    std::vector<std::string> want;
    for (const auto& d : divisors) {
        if (d.codim() != 1)
            throw precondition_error("intersection_profile: inputs must be divisorial (codimension 1)");
        if (!(d.mu == mu))
            throw precondition_error("intersection_profile: divisor signature does not match");
        want.push_back(canonical_form(d));
    }
    std::sort(want.begin(), want.end());
    if (std::adjacent_find(want.begin(), want.end()) != want.end())
        return std::nullopt; // repeated divisor: no such stratum

    const int r = static_cast<int>(divisors.size());
    std::optional<IntersectionResult> res;
    for (const auto& g : enumerate_strata(mu, r, limits)) {
        auto ds = divisors_of(g);
        if (ds.key() != want) continue;
        Profile p;
        for (const auto& v : ds.vertical) p.vertical.push_back(canonical_form(v));
        for (const auto& h : ds.horizontal) p.horizontal.push_back(canonical_form(h));
        std::sort(p.horizontal.begin(), p.horizontal.end());
        if (!res) {
            res.emplace();
            res->profile = p;
            res->profile_vertical = ds.vertical;
            res->profile_horizontal = ds.horizontal;
        } else if (!(res->profile == p)) {
            throw precondition_error("intersection ordering is not unique (distinct realizations disagree)");
        }
        res->realizations.push_back(g);
    }
    return res;
}

UniqueGraphReport verify_unique_graph(const Signature& mu, int r, const EnumLimits& limits) {
    if (r < 1) throw precondition_error("verify_unique_graph: r >= 1 required");
    UniqueGraphReport rep;
    std::map<std::vector<std::string>, std::vector<const EnhancedLevelGraph*>> groups;
    std::map<std::vector<std::string>, std::vector<Profile>> orders;

    auto strata = enumerate_strata(mu, r, limits);
    rep.strata_checked = static_cast<long long>(strata.size());
    for (const auto& g : strata) {
        auto ds = divisors_of(g);
        auto key = ds.key();
        if (std::adjacent_find(key.begin(), key.end()) != key.end())
            rep.violations.push_back("stratum with a repeated divisor in its profile");
        if (static_cast<int>(key.size()) != r)
            rep.violations.push_back("stratum whose divisor count differs from its codimension");
        Profile p;
        for (const auto& v : ds.vertical) p.vertical.push_back(canonical_form(v));
        for (const auto& h : ds.horizontal) p.horizontal.push_back(canonical_form(h));
        std::sort(p.horizontal.begin(), p.horizontal.end());
        groups[key].push_back(&g);
        orders[key].push_back(std::move(p));
    }
    rep.nonempty_intersections = static_cast<long long>(groups.size());
    for (const auto& [key, members] : groups) {
        if (members.size() != 1)
            rep.violations.push_back("divisor set realized by " + std::to_string(members.size()) +
                                     " distinct codim-" + std::to_string(r) + " graphs");
        const auto& os = orders[key];
        for (std::size_t i = 1; i < os.size(); ++i)
            if (!(os[i] == os[0])) rep.violations.push_back("divisor set with two distinct orderings");
    }
    return rep;
}

StratumCensus census(const Signature& mu, const EnumLimits& limits) {
    StratumCensus c;
    for_each_stratum(
        mu,
        [&](const EnhancedLevelGraph& g) {
            ++c.counts[g.codim()];
            if (g.codim() == 1 && g.levels_below_top() == 1 && g.tree.edge_count() >= 2)
                c.exceptional.push_back(g);
            return true;
        },
        limits);
    std::sort(c.exceptional.begin(), c.exceptional.end(),
              [](const EnhancedLevelGraph& a, const EnhancedLevelGraph& b) {
                  return canonical_form(a) < canonical_form(b);
              });
    return c;
}

} // namespace msdiff
