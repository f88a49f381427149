#include "msdiff/level_graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace msdiff {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

int edge_kappa(const HalfEdgeOrders& orders, int e) {
    auto [a, b] = orders.at[e];
    if (a == -1 && b == -1) return 0;
    return std::max(a, b) + 1;
}

} // namespace

int EnhancedLevelGraph::horizontal_edges() const {
    int h = 0;
    for (int k : kappa) h += (k == 0);
    return h;
}

int EnhancedLevelGraph::levels_below_top() const {
    int lo = 0;
    for (int l : level) lo = std::min(lo, l);
    return -lo;
}

int EnhancedLevelGraph::codim() const { return levels_below_top() + horizontal_edges(); }

int EnhancedLevelGraph::upper_end(int e) const {
    return orders.at[e].first >= 0 ? tree.edges[e].first : tree.edges[e].second;
}

int EnhancedLevelGraph::lower_end(int e) const {
    return orders.at[e].first >= 0 ? tree.edges[e].second : tree.edges[e].first;
}

std::pair<int, int> EnhancedLevelGraph::passage_span(int e) const {
    int up = level[upper_end(e)], lo = level[lower_end(e)];
    return {-up + 1, -lo};
}

void EnhancedLevelGraph::validate() const {
    if (static_cast<int>(level.size()) != tree.vertex_count ||
        static_cast<int>(kappa.size()) != tree.edge_count() ||
        static_cast<int>(orders.at.size()) != tree.edge_count())
        throw precondition_error("level graph invariant violated: field sizes disagree");
    if (!tree.is_stable())
        throw precondition_error("level graph invariant violated: underlying tree is not stable");
    // Per-vertex order sums.
    for (int v = 0; v < tree.vertex_count; ++v) {
        long long s = mu.mask_sum(tree.legs_on(v));
        for (int e = 0; e < tree.edge_count(); ++e) {
            if (tree.edges[e].first == v) s += orders.at[e].first;
            if (tree.edges[e].second == v) s += orders.at[e].second;
        }
        if (s != -2)
            throw precondition_error("level graph invariant violated: vertex order sum != -2");
    }
    // Level normalization: surjective onto {0,...,-L}.
    int lo = 0;
    std::vector<char> hit;
    for (int l : level) lo = std::min(lo, l);
    hit.assign(-lo + 1, 0);
    for (int l : level) {
        if (l > 0) throw precondition_error("level graph invariant violated: positive level");
        hit[-l] = 1;
    }
    for (char c : hit)
        if (!c) throw precondition_error("level graph invariant violated: level range has a gap");
    // Edge shape vs levels vs kappa.
    for (int e = 0; e < tree.edge_count(); ++e) {
        auto [a, b] = orders.at[e];
        if (a + b != -2)
            throw precondition_error("level graph invariant violated: half-edge orders of an edge must sum to -2");
        bool horizontal = (a == -1 && b == -1);
        int lu = level[tree.edges[e].first], lv = level[tree.edges[e].second];
        if (horizontal) {
            if (kappa[e] != 0 || lu != lv)
                throw precondition_error("level graph invariant violated: horizontal edge must join equal levels with kappa 0");
        } else {
            if (kappa[e] != std::max(a, b) + 1 || kappa[e] < 1)
                throw precondition_error("level graph invariant violated: vertical kappa must be upper order + 1 >= 1");
            if (level[upper_end(e)] <= level[lower_end(e)])
                throw precondition_error("level graph invariant violated: vertical edge must go strictly downward");
        }
    }
}

HalfEdgeOrders derive_orders(const StableTree& tree, const Signature& mu) {
    if (static_cast<int>(mu.n()) != tree.n_legs)
        throw precondition_error("derive_orders: signature length does not match the tree legs");
    const int E = tree.edge_count();
    HalfEdgeOrders out;
    out.at.assign(E, {0, 0});

    std::vector<long long> legsum(tree.vertex_count, 0);
    for (int l = 0; l < tree.n_legs; ++l) legsum[tree.leg_at[l]] += mu.order(l);
    std::vector<char> resolved(E, 0);
    std::vector<int> open_deg(tree.vertex_count, 0);
    for (const auto& [a, b] : tree.edges) ++open_deg[a], ++open_deg[b];

    for (int step = 0; step < E; ++step) {
        int leaf = -1;
        for (int v = 0; v < tree.vertex_count && leaf < 0; ++v)
            if (open_deg[v] == 1) leaf = v;
        for (int e = 0; e < E; ++e) {
            if (resolved[e]) continue;
            auto [a, b] = tree.edges[e];
            if (a != leaf && b != leaf) continue;
            int here = static_cast<int>(-2 - legsum[leaf]);
            int there = -2 - here;
            out.at[e] = (a == leaf) ? std::pair{here, there} : std::pair{there, here};
            int other = (a == leaf) ? b : a;
            legsum[other] += there;
            resolved[e] = 1;
            --open_deg[leaf];
            --open_deg[other];
            break;
        }
    }
    return out;
}

EnhancedLevelGraph make_level_graph(const StableTree& tree, const Signature& mu,
                                    std::vector<int> levels) {
    EnhancedLevelGraph g;
    g.mu = mu;
    g.tree = tree;
    g.orders = derive_orders(tree, mu);
    int top = *std::max_element(levels.begin(), levels.end());
    for (int& l : levels) l -= top;
    g.level = std::move(levels);
    g.kappa.resize(tree.edge_count());
    for (int e = 0; e < tree.edge_count(); ++e) g.kappa[e] = edge_kappa(g.orders, e);
    return g;
}

std::vector<EnhancedLevelGraph> enumerate_level_structures(const StableTree& tree,
                                                           const HalfEdgeOrders& orders,
                                                           const Signature& mu) {
    const int V = tree.vertex_count;
    Dsu dsu(V);
    for (int e = 0; e < tree.edge_count(); ++e)
        if (edge_kappa(orders, e) == 0) dsu.unite(tree.edges[e].first, tree.edges[e].second);

    std::vector<int> comp_of(V), reps;
    std::map<int, int> comp_id;
    for (int v = 0; v < V; ++v) {
        int r = dsu.find(v);
        if (!comp_id.count(r)) {
            comp_id[r] = static_cast<int>(reps.size());
            reps.push_back(r);
        }
        comp_of[v] = comp_id[r];
    }
    const int C = static_cast<int>(reps.size());

    // up_adj[c] = components that must sit strictly above c.
    std::vector<std::uint32_t> up_adj(C, 0);
    for (int e = 0; e < tree.edge_count(); ++e) {
        if (edge_kappa(orders, e) == 0) continue;
        int up = orders.at[e].first >= 0 ? tree.edges[e].first : tree.edges[e].second;
        int lo = orders.at[e].first >= 0 ? tree.edges[e].second : tree.edges[e].first;
        up_adj[comp_of[lo]] |= 1u << comp_of[up];
    }

    std::vector<EnhancedLevelGraph> out;
    std::vector<int> comp_level(C, 0);
    auto emit = [&]() {
        std::vector<int> levels(V);
        for (int v = 0; v < V; ++v) levels[v] = comp_level[comp_of[v]];
        auto g = make_level_graph(tree, mu, std::move(levels));
        out.push_back(std::move(g));
    };
    std::function<void(std::uint32_t, int)> place = [&](std::uint32_t remaining, int depth) {
        if (remaining == 0) {
            emit();
            return;
        }
        std::uint32_t avail = 0;
        for (int c = 0; c < C; ++c)
            if ((remaining >> c & 1u) && (up_adj[c] & remaining) == 0) avail |= 1u << c;
        // every nonempty subset of the currently placeable components
        for (std::uint32_t sub = avail; sub; sub = (sub - 1) & avail) {
            for (int c = 0; c < C; ++c)
                if (sub >> c & 1u) comp_level[c] = -depth;
            place(remaining & ~sub, depth + 1);
        }
    };
    place((C >= 32 ? ~0u : (1u << C) - 1u), 0);
    return out;
}

void for_each_stratum(const Signature& mu, const std::function<bool(const EnhancedLevelGraph&)>& visit,
                      const EnumLimits& limits) {
    auto trees = enumerate_stable_trees(mu.n(), std::nullopt, limits);
    for (const auto& t : trees) {
        auto orders = derive_orders(t, mu);
        for (auto& g : enumerate_level_structures(t, orders, mu))
            if (!visit(g)) return;
    }
}

std::vector<EnhancedLevelGraph> enumerate_strata(const Signature& mu, std::optional<int> codim,
                                                 const EnumLimits& limits) {
    std::vector<EnhancedLevelGraph> out;
    for_each_stratum(
        mu,
        [&](const EnhancedLevelGraph& g) {
            if (!codim || g.codim() == *codim) out.push_back(g);
            return true;
        },
        limits);
    std::sort(out.begin(), out.end(), [](const EnhancedLevelGraph& a, const EnhancedLevelGraph& b) {
        return canonical_form(a) < canonical_form(b);
    });
    return out;
}

namespace {

std::string rooted_code(const EnhancedLevelGraph& g, int v, int parent_edge) {
    std::string s = "(" + std::to_string(g.level[v]) + ";";
    std::uint32_t legs = g.tree.legs_on(v);
    for (int l = 0; l < g.tree.n_legs; ++l)
        if (legs >> l & 1u) s += std::to_string(l + 1) + ",";
    s += ";";
    std::vector<std::string> children;
    for (int e = 0; e < g.tree.edge_count(); ++e) {
        if (e == parent_edge) continue;
        const auto& [a, b] = g.tree.edges[e];
        int w = -1;
        if (a == v) w = b;
        else if (b == v) w = a;
        if (w < 0) continue;
        children.push_back("k" + std::to_string(g.kappa[e]) +
                           "o" + std::to_string(g.orders.at_end(e, a == v)) + rooted_code(g, w, e));
    }
    std::sort(children.begin(), children.end());
    for (const auto& c : children) s += c;
    s += ")";
    return s;
}

} // namespace

std::string canonical_form(const EnhancedLevelGraph& g) {
    std::string best;
    for (int r = 0; r < g.tree.vertex_count; ++r) {
        std::string code = rooted_code(g, r, -1);
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

namespace {

/// Rebuilds a level graph after contracting the edges with keep[e] == false.
/// new_level gives the level of each old vertex in the contracted graph; it
/// must be constant on contracted classes.
EnhancedLevelGraph rebuild_contracted(const EnhancedLevelGraph& g, const std::vector<char>& keep,
                                      const std::vector<int>& new_level) {
    Dsu dsu(g.tree.vertex_count);
    for (int e = 0; e < g.tree.edge_count(); ++e)
        if (!keep[e]) dsu.unite(g.tree.edges[e].first, g.tree.edges[e].second);

    std::vector<int> id(g.tree.vertex_count, -1);
    int next = 0;
    for (int v = 0; v < g.tree.vertex_count; ++v) {
        int r = dsu.find(v);
        if (id[r] < 0) id[r] = next++;
        id[v] = id[r];
    }
    StableTree t;
    t.n_legs = g.tree.n_legs;
    t.vertex_count = next;
    t.leg_at.resize(t.n_legs);
    for (int l = 0; l < t.n_legs; ++l) t.leg_at[l] = id[g.tree.leg_at[l]];
    std::vector<int> levels(next, 0);
    for (int v = 0; v < g.tree.vertex_count; ++v) levels[id[v]] = new_level[v];
    for (int e = 0; e < g.tree.edge_count(); ++e)
        if (keep[e]) t.edges.emplace_back(id[g.tree.edges[e].first], id[g.tree.edges[e].second]);

    auto out = make_level_graph(t, g.mu, std::move(levels));
    // Surviving edges keep their enhancement: the leg partition of an edge is
    // untouched by contracting other edges.
    int j = 0;
    for (int e = 0; e < g.tree.edge_count(); ++e) {
        if (!keep[e]) continue;
        if (out.kappa[j] != g.kappa[e])
            throw precondition_error("contraction changed a surviving enhancement (internal error)");
        ++j;
    }
    return out;
}

} // namespace

EnhancedLevelGraph undegenerate(const EnhancedLevelGraph& g, const std::set<int>& keep) {
    const int L = g.levels_below_top();
    if (keep.empty()) throw precondition_error("undegenerate: keep set must be nonempty");
    for (int i : keep)
        if (i < 1 || i > L) throw precondition_error("undegenerate: passage index out of range");

    std::vector<char> keep_edge(g.tree.edge_count(), 0);
    for (int e = 0; e < g.tree.edge_count(); ++e) {
        if (g.is_horizontal(e)) {
            keep_edge[e] = 1;
            continue;
        }
        auto [lo, hi] = g.passage_span(e);
        for (int i : keep)
            if (i >= lo && i <= hi) {
                keep_edge[e] = 1;
                break;
            }
    }
    std::vector<int> new_level(g.tree.vertex_count);
    for (int v = 0; v < g.tree.vertex_count; ++v) {
        int depth = 0;
        for (int i : keep)
            if (g.level[v] <= -i) ++depth;
        new_level[v] = -depth;
    }
    return rebuild_contracted(g, keep_edge, new_level);
}

EnhancedLevelGraph smooth_horizontal(const EnhancedLevelGraph& g) {
    std::vector<char> keep(g.tree.edge_count(), 0);
    for (int e = 0; e < g.tree.edge_count(); ++e) keep[e] = !g.is_horizontal(e);
    return rebuild_contracted(g, keep, g.level);
}

EnhancedLevelGraph horizontal_divisor_of(const EnhancedLevelGraph& g, int horizontal_edge) {
    if (!g.is_horizontal(horizontal_edge))
        throw precondition_error("horizontal_divisor_of: edge is not horizontal");
    std::vector<char> keep(g.tree.edge_count(), 0);
    keep[horizontal_edge] = 1;
    std::vector<int> flat(g.tree.vertex_count, 0);
    return rebuild_contracted(g, keep, flat);
}

} // namespace msdiff
