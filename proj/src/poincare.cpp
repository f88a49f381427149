#include "msdiff/poincare.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "msdiff/cherry.hpp"

namespace msdiff {

int Poly::degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != 0) return k;
    return 0;
}

void Poly::trim() {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
}

bool Poly::palindromic() const {
    int d = degree();
    for (int k = 0; k <= d; ++k)
        if (coeff(k) != coeff(d - k)) return false;
    return true;
}

bool Poly::even_support() const {
    for (std::size_t k = 1; k < c.size(); k += 2)
        if (c[k] != 0) return false;
    return true;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0);
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    return r;
}

Poly Poly::shifted(int k) const {
    Poly r;
    r.c.assign(c.size() + k, 0);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    return r;
}

bool Poly::operator==(const Poly& o) const {
    Poly a = *this, b = o;
    a.trim();
    b.trim();
    return a.c == b.c;
}

std::string Poly::str() const {
    std::string s;
    for (int k = 0; k <= degree(); ++k) {
        if (coeff(k) == 0) continue;
        if (!s.empty()) s += " + ";
        if (k == 0) s += std::to_string(coeff(k));
        else if (coeff(k) == 1) s += "t^" + std::to_string(k);
        else s += std::to_string(coeff(k)) + " t^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

namespace {

// point-count polynomial (in q) of the open moduli of m distinct points on a
// line modulo its automorphisms: prod_{k=2}^{m-2} (q - k)
std::vector<long long> open_config_qpoly(int m) {
    std::vector<long long> p{1};
    for (int k = 2; k <= m - 2; ++k) {
        std::vector<long long> r(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            r[i + 1] += p[i];
            r[i] -= static_cast<long long>(k) * p[i];
        }
        p = std::move(r);
    }
    return p;
}

std::vector<long long> qmul(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

} // namespace

Poly poincare_m0bar(int n, const EnumLimits& limits) {
    static std::map<int, Poly> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 3) throw precondition_error("poincare_m0bar: n >= 3 required");

    std::vector<long long> total{0};
    for (const auto& t : enumerate_stable_trees(n, std::nullopt, limits)) {
        std::vector<long long> prod{1};
        for (int v = 0; v < t.vertex_count; ++v) prod = qmul(prod, open_config_qpoly(t.valence(v)));
        if (prod.size() > total.size()) total.resize(prod.size(), 0);
        for (std::size_t i = 0; i < prod.size(); ++i) total[i] += prod[i];
    }
    Poly p;
    p.c.assign(2 * (total.size() - 1) + 1, 0);
    for (std::size_t i = 0; i < total.size(); ++i) p.c[2 * i] = total[i];
    if (!p.palindromic() || !p.unit_ends())
        throw precondition_error("poincare_m0bar: stratum sum failed the duality check");
    {
        std::lock_guard<std::mutex> lk(mtx);
        cache.emplace(n, p);
    }
    return p;
}

namespace {

std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

bool subset_of(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    // a, b sorted
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Union of two sorted laminar families, or nullopt when some pair crosses
// (empty stratum intersection).
std::optional<std::vector<std::uint32_t>> join_strata(const std::vector<std::uint32_t>& a,
                                                      const std::vector<std::uint32_t>& b) {
    for (std::uint32_t x : a)
        for (std::uint32_t y : b)
            if (!bipartitions_compatible(x, y)) return std::nullopt;
    std::vector<std::uint32_t> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

bool is_universal_family(const std::optional<std::string>& family) {
    return family && (*family == "(0^{n-1},-2)" || *family == "(0^{n-2},-1^2)");
}

} // namespace

BlowupPlan build_blowup_plan(const Signature& mu, const TowerOptions& opts, const EnumLimits& limits) {
    BlowupPlan plan;
    plan.mu = mu;
    const int n = mu.n();
    if (n <= 4) return plan; // no exceptional divisors

    auto verdict = classify_smooth(mu, limits);
    if (!verdict.smooth)
        throw precondition_error("blowup tower requires a smooth coarse space; this signature is singular");
    if (!is_universal_family(verdict.family) && !opts.allow_experimental)
        throw precondition_error(
            "blowup tower outside (0^{n-1},-2) and (0^{n-2},-1^2) is experimental; enable it explicitly");
    if (n > 8) throw resource_limit_error("blowup tower capped at n <= 8");

    auto cen = census(mu, limits);
    std::vector<BlowupStep> steps;
    std::map<std::string, int> index_of; // canonical divisor encoding -> step index
    std::vector<std::string> keys;
    for (const auto& d : cen.exceptional) {
        BlowupStep s;
        s.divisor = d;
        s.center = d.tree.bipartitions();
        s.codim = static_cast<int>(s.center.size());
        int tops = 0, bottoms = 0;
        for (int v = 0; v < d.tree.vertex_count; ++v) (d.level[v] == 0 ? tops : bottoms)++;
        if (tops == 1) s.inverted = false;
        else if (bottoms == 1) s.inverted = true;
        else throw precondition_error("exceptional divisor with several vertices on both levels; tower unsupported");
        std::string key = canonical_form(d);
        index_of[key] = static_cast<int>(steps.size());
        keys.push_back(key);
        steps.push_back(std::move(s));
    }
    const int m = static_cast<int>(steps.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (steps[i].center == steps[j].center)
                throw precondition_error("two exceptional divisors share an image stratum; tower unsupported");

    // Intersection partial order from the codimension-2 strata: the divisor
    // whose passage survives on top comes first (for inverted pairs the roles
    // flip, ordering by the top-level stratum instead).
    std::vector<std::vector<char>> before(m, std::vector<char>(m, 0));
    for (const auto& g : enumerate_strata(mu, 2, limits)) {
        auto ds = divisors_of(g);
        if (ds.vertical.size() != 2) continue;
        auto k1 = canonical_form(ds.vertical[0]), k2 = canonical_form(ds.vertical[1]);
        auto i1 = index_of.find(k1), i2 = index_of.find(k2);
        if (i1 == index_of.end() || i2 == index_of.end()) continue;
        int a = i1->second, b = i2->second;
        bool inv1 = steps[a].inverted, inv2 = steps[b].inverted;
        if (inv1 != inv2)
            throw precondition_error("a cherry and an inverted-cherry divisor intersect; tower unsupported");
        if (inv1) std::swap(a, b);
        before[a][b] = 1;
        if (before[b][a])
            throw precondition_error("cyclic intersection order between exceptional divisors");
    }

    // deterministic topological sort by the requested tie-break
    auto tie_key = [&](int i) -> std::pair<std::uint64_t, std::string> {
        switch (opts.tie_break) {
            case TieBreak::lex: return {0, keys[i]};
            case TieBreak::revlex: {
                std::string r = keys[i];
                std::reverse(r.begin(), r.end());
                return {0, r};
            }
            case TieBreak::shuffle: return {fnv1a64(keys[i], opts.seed), keys[i]};
        }
        return {0, keys[i]};
    };
    std::vector<int> order;
    std::vector<char> placed(m, 0);
    for (int round = 0; round < m; ++round) {
        int best = -1;
        std::pair<std::uint64_t, std::string> best_key;
        for (int i = 0; i < m; ++i) {
            if (placed[i]) continue;
            bool ready = true;
            for (int j = 0; j < m && ready; ++j)
                if (!placed[j] && before[j][i]) ready = false;
            if (!ready) continue;
            auto k = tie_key(i);
            if (best < 0 || k < best_key) {
                best = i;
                best_key = k;
            }
        }
        if (best < 0) throw precondition_error("intersection order is cyclic; tower unsupported");
        placed[best] = 1;
        order.push_back(best);
    }
    for (int i : order) plan.steps.push_back(steps[i]);

    // containment guarantee: contained centers must be blown up first
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q)
            if (subset_of(plan.steps[p].center, plan.steps[q].center) &&
                plan.steps[p].center.size() < plan.steps[q].center.size())
                throw precondition_error("blowup order puts a center after one it contains");
    return plan;
}

namespace {

struct TowerCtx {
    int n;
    const std::vector<BlowupStep>* steps;
    const EnumLimits* limits;
    std::map<std::pair<int, std::vector<std::uint32_t>>, Poly> memo;

    Poly stratum_poly(const std::vector<std::uint32_t>& bips) {
        auto t = tree_from_bipartitions(n, bips);
        Poly p;
        p.c = {1};
        for (int v = 0; v < t.vertex_count; ++v) p = p * poincare_m0bar(t.valence(v), *limits);
        return p;
    }

    // Betti polynomial of the proper transform of the stratum S after the
    // first `stage` blowups. S must not be contained in any earlier center.
    Poly transform_poly(const std::vector<std::uint32_t>& S, int stage) {
        auto key = std::make_pair(stage, S);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        Poly p = stratum_poly(S);
        for (int j = 0; j < stage; ++j) {
            const auto& Zj = (*steps)[j].center;
            auto joined = join_strata(Zj, S);
            if (!joined) continue; // disjoint from this center
            const auto& T = *joined;
            if (T.size() == S.size())
                throw precondition_error("transform recursion met a containing center (internal error)");
            // an earlier blowup along a center containing the trace already
            // separated this center from S
            bool severed = false;
            for (int w = 0; w < j && !severed; ++w)
                if (subset_of((*steps)[w].center, T)) severed = true;
            if (severed) continue;
            int r = static_cast<int>(T.size() - S.size());
            if (r < 2) continue; // divisorial trace: the blowup restricts to a no-op
            Poly contrib = transform_poly(T, j);
            for (int i = 1; i <= r - 1; ++i) p += contrib.shifted(2 * i);
        }
        memo.emplace(std::move(key), p);
        return p;
    }
};

} // namespace

Poly poincare_multiscale(const Signature& mu, const TowerOptions& opts, const EnumLimits& limits) {
    const int n = mu.n();
    Poly total = poincare_m0bar(n, limits);
    if (n > 4) {
        auto plan = build_blowup_plan(mu, opts, limits);
        TowerCtx ctx{n, &plan.steps, &limits, {}};
        for (int k = 0; k < static_cast<int>(plan.steps.size()); ++k) {
            Poly pz = ctx.transform_poly(plan.steps[k].center, k);
            for (int i = 1; i <= plan.steps[k].codim - 1; ++i) total += pz.shifted(2 * i);
        }
    }
    total.trim();
    int dim = n - 3;
    if (total.degree() != 2 * dim || !total.palindromic() || !total.unit_ends() ||
        !total.even_support())
        throw precondition_error("tower output failed the duality checks (internal error)");
    return total;
}

std::pair<long long, long long> h2_crosscheck(const Signature& mu, const TowerOptions& opts,
                                              const EnumLimits& limits) {
    const int n = mu.n();
    long long pic_rank = (1LL << (n - 1)) - static_cast<long long>(n) * (n - 1) / 2 - 1;
    long long exceptional = 0;
    if (n > 4) exceptional = static_cast<long long>(census(mu, limits).exceptional.size());
    Poly p = poincare_multiscale(mu, opts, limits);
    return {pic_rank + exceptional, p.coeff(2)};
}

} // namespace msdiff
