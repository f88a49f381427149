#include "msdiff/stable_tree.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <string>

namespace msdiff {

int StableTree::valence(int v) const {
    int val = 0;
    for (const auto& [a, b] : edges) val += (a == v) + (b == v);
    for (int l = 0; l < n_legs; ++l)
        if (leg_at[l] == v) ++val;
    return val;
}

bool StableTree::is_stable() const {
    for (int v = 0; v < vertex_count; ++v)
        if (valence(v) < 3) return false;
    return true;
}

std::uint32_t StableTree::legs_on(int v) const {
    std::uint32_t m = 0;
    for (int l = 0; l < n_legs; ++l)
        if (leg_at[l] == v) m |= 1u << l;
    return m;
}

std::uint32_t StableTree::legs_below(int e, int end) const {
    // BFS of the component of `end` in the tree minus edge e.
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{end};
    seen[end] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int j = 0; j < edge_count(); ++j) {
            if (j == e) continue;
            const auto& [a, b] = edges[j];
            int w = -1;
            if (a == v) w = b;
            else if (b == v) w = a;
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::uint32_t m = 0;
    for (int l = 0; l < n_legs; ++l)
        if (seen[leg_at[l]]) m |= 1u << l;
    return m;
}

std::vector<std::uint32_t> StableTree::bipartitions() const {
    std::vector<std::uint32_t> out;
    out.reserve(edges.size());
    for (int e = 0; e < edge_count(); ++e) {
        std::uint32_t side = legs_below(e, edges[e].first);
        if (side & 1u) side = legs_below(e, edges[e].second);
        out.push_back(side);
    }
    std::sort(out.begin(), out.end());
    return out;
}

StableTree tree_from_bipartitions(int n, std::vector<std::uint32_t> family) {
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());

    StableTree t;
    t.n_legs = n;
    t.vertex_count = static_cast<int>(family.size()) + 1; // +1 for the leg-0 side root
    t.leg_at.assign(n, 0);
    const int root = 0;

    // parent of set S = the smallest proper superset in the family, else root.
    auto vertex_of = [&](std::uint32_t s) {
        return 1 + static_cast<int>(std::lower_bound(family.begin(), family.end(), s) - family.begin());
    };
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::uint32_t best = 0;
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j) continue;
            if ((family[i] & family[j]) == family[i]) { // family[i] subset of family[j]
                if (best == 0 || std::popcount(family[j]) < std::popcount(best) ||
                    (std::popcount(family[j]) == std::popcount(best) && family[j] < best))
                    best = family[j];
            }
        }
        int parent = best == 0 ? root : vertex_of(best);
        t.edges.emplace_back(parent, vertex_of(family[i]));
    }
    // Each leg lives on the vertex of the minimal family set containing it.
    for (int l = 0; l < n; ++l) {
        std::uint32_t bit = 1u << l, best = 0;
        for (std::uint32_t s : family) {
            if (s & bit) {
                if (best == 0 || std::popcount(s) < std::popcount(best) ||
                    (std::popcount(s) == std::popcount(best) && s < best))
                    best = s;
            }
        }
        t.leg_at[l] = best == 0 ? root : vertex_of(best);
    }
    return t;
}

std::vector<StableTree> enumerate_stable_trees(int n, std::optional<int> max_edges,
                                               const EnumLimits& limits) {
    if (n < 3) throw precondition_error("stable trees need n >= 3 legs");
    if (n > limits.max_marked_points)
        throw resource_limit_error("stable tree enumeration capped at n <= " +
                                   std::to_string(limits.max_marked_points) +
                                   " (raise the limit explicitly to override)");

    // Candidate edge bipartitions: leg masks avoiding leg 0, 2 <= |S| <= n-2.
    std::vector<std::uint32_t> cand;
    for (std::uint32_t s = 0; s < (1u << n); s += 2) {
        int pc = std::popcount(s);
        if (pc >= 2 && pc <= n - 2) cand.push_back(s);
    }
    std::sort(cand.begin(), cand.end());
    const int m = static_cast<int>(cand.size());

    // compat[i] = bitset over candidates compatible with cand[i].
    std::vector<std::vector<std::uint64_t>> compat(m, std::vector<std::uint64_t>((m + 63) / 64, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && bipartitions_compatible(cand[i], cand[j]))
                compat[i][j / 64] |= 1ull << (j % 64);

    int edge_cap = max_edges.value_or(n - 3);
    edge_cap = std::min(edge_cap, n - 3);

    std::vector<StableTree> out;
    std::vector<std::uint32_t> chosen;
    std::vector<std::uint64_t> allowed((m + 63) / 64, ~0ull);

    std::function<void(int)> dfs = [&](int start) {
        out.push_back(tree_from_bipartitions(n, chosen));
        if (static_cast<int>(chosen.size()) == edge_cap) return;
        for (int i = start; i < m; ++i) {
            if (!(allowed[i / 64] >> (i % 64) & 1ull)) continue;
            auto saved = allowed;
            for (std::size_t w = 0; w < allowed.size(); ++w) allowed[w] &= compat[i][w];
            chosen.push_back(cand[i]);
            dfs(i + 1);
            chosen.pop_back();
            allowed = saved;
        }
    };
    dfs(0);
    return out;
}

} // namespace msdiff
