#include "msdiff/json_io.hpp"

#include <algorithm>
#include <limits>

namespace msdiff {

Json graph_to_json(const EnhancedLevelGraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (int v = 0; v < g.tree.vertex_count; ++v) {
        Json jv;
        jv["level"] = g.level[v];
        std::vector<int> legs;
        for (int l = 0; l < g.tree.n_legs; ++l)
            if (g.tree.leg_at[l] == v) legs.push_back(l + 1);
        jv["legs"] = legs;
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = Json::array();
    for (int e = 0; e < g.tree.edge_count(); ++e) {
        Json je;
        je["u"] = g.tree.edges[e].first;
        je["v"] = g.tree.edges[e].second;
        je["kappa"] = g.kappa[e];
        j["edges"].push_back(std::move(je));
    }
    j["mu"] = g.mu.orders();
    return j;
}

EnhancedLevelGraph graph_from_json(const Json& j) {
    if (!j.contains("vertices") || !j.contains("edges") || !j.contains("mu"))
        throw precondition_error("graph JSON must contain vertices, edges and mu");
    Signature mu(j["mu"].get<std::vector<int>>());
    StableTree t;
    t.n_legs = mu.n();
    t.vertex_count = static_cast<int>(j["vertices"].size());
    t.leg_at.assign(t.n_legs, -1);
    std::vector<int> levels;
    for (int v = 0; v < t.vertex_count; ++v) {
        const auto& jv = j["vertices"][v];
        levels.push_back(jv["level"].get<int>());
        for (int leg : jv["legs"].get<std::vector<int>>()) {
            if (leg < 1 || leg > t.n_legs || t.leg_at[leg - 1] != -1)
                throw precondition_error("graph JSON: each marked point must appear exactly once");
            t.leg_at[leg - 1] = v;
        }
    }
    for (int l = 0; l < t.n_legs; ++l)
        if (t.leg_at[l] < 0) throw precondition_error("graph JSON: missing marked point");
    for (const auto& je : j["edges"]) {
        int u = je["u"].get<int>(), v = je["v"].get<int>();
        if (u < 0 || v < 0 || u >= t.vertex_count || v >= t.vertex_count || u == v)
            throw precondition_error("graph JSON: bad edge endpoints");
        t.edges.emplace_back(u, v);
    }
    if (t.edge_count() != t.vertex_count - 1)
        throw precondition_error("graph JSON: edges must form a tree");
    auto g = make_level_graph(t, mu, std::move(levels));
    g.validate();
    // declared kappas must agree with the derived ones
    for (int e = 0; e < t.edge_count(); ++e)
        if (j["edges"][e].contains("kappa") && j["edges"][e]["kappa"].get<int>() != g.kappa[e])
            throw precondition_error("graph JSON: declared kappa disagrees with the derived enhancement");
    return g;
}

namespace {

std::vector<int> mask_to_legs(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int l = 0; l < n; ++l)
        if (mask >> l & 1u) out.push_back(l + 1);
    return out;
}

} // namespace

Json cherry_to_json(const Cherry& c, int n) {
    Json j;
    j["root"] = mask_to_legs(c.root_legs, n);
    j["left"] = mask_to_legs(c.left_legs, n);
    j["right"] = mask_to_legs(c.right_legs, n);
    j["inverted"] = c.inverted;
    return j;
}

Json verdict_to_json(const SmoothnessVerdict& v, int n) {
    Json j;
    j["smooth"] = v.smooth;
    if (v.witness) j["witness"] = cherry_to_json(*v.witness, n);
    if (v.family) j["family"] = *v.family;
    return j;
}

Json census_to_json(const StratumCensus& c) {
    Json j;
    j["counts"] = Json::object();
    for (const auto& [codim, count] : c.counts) j["counts"][std::to_string(codim)] = count;
    j["exceptional"] = Json::array();
    for (const auto& g : c.exceptional) j["exceptional"].push_back(graph_to_json(g));
    return j;
}

Json intersection_to_json(const IntersectionResult& r) {
    Json j;
    j["profile"] = Json::array();
    for (const auto& g : r.profile_vertical) j["profile"].push_back(graph_to_json(g));
    j["horizontal"] = Json::array();
    for (const auto& g : r.profile_horizontal) j["horizontal"].push_back(graph_to_json(g));
    j["realizations"] = Json::array();
    for (const auto& g : r.realizations) j["realizations"].push_back(graph_to_json(g));
    return j;
}

Json poly_to_json(const Poly& p, int dim) {
    Json j;
    j["dim"] = dim;
    std::vector<long long> betti(2 * dim + 1, 0);
    for (int k = 0; k < static_cast<int>(betti.size()); ++k) betti[k] = p.coeff(k);
    j["betti"] = betti;
    return j;
}

Json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Json twist_to_json(const TwistData& td) {
    Json j;
    j["L"] = td.levels;
    j["edges"] = Json::array();
    for (const auto& e : td.edges) {
        Json je;
        je["kappa"] = e.kappa;
        std::vector<int> ps;
        for (int i = e.first_passage; i <= e.last_passage; ++i) ps.push_back(i);
        je["passages"] = ps;
        j["edges"].push_back(std::move(je));
    }
    return j;
}

Json lattice_result_to_json(const LatticeIndexResult& r) {
    Json j;
    j["ghost_order"] = bigint_to_json(r.ghost_order);
    j["snf"] = Json::array();
    for (const auto& d : r.snf_diagonal) j["snf"].push_back(bigint_to_json(d));
    return j;
}

Json plan_to_json(const BlowupPlan& p) {
    Json j = Json::array();
    for (const auto& s : p.steps) {
        Json js;
        auto t = tree_from_bipartitions(p.mu.n(), s.center);
        js["center"] = Json::object();
        js["center"]["vertices"] = Json::array();
        for (int v = 0; v < t.vertex_count; ++v) {
            Json jv;
            jv["legs"] = mask_to_legs(t.legs_on(v), t.n_legs);
            js["center"]["vertices"].push_back(std::move(jv));
        }
        js["center"]["edges"] = Json::array();
        for (const auto& [u, v] : t.edges) {
            Json je;
            je["u"] = u;
            je["v"] = v;
            js["center"]["edges"].push_back(std::move(je));
        }
        js["codim"] = s.codim;
        js["divisor"] = graph_to_json(s.divisor);
        j.push_back(std::move(js));
    }
    return j;
}

std::string graph_to_dot(const EnhancedLevelGraph& g) {
    std::string s = "graph stratum {\n";
    s += "  // graph: " + graph_to_json(g).dump() + "\n";
    s += "  rankdir=TB;\n  node [shape=circle];\n";
    for (int lvl = 0; lvl >= -g.levels_below_top(); --lvl) {
        s += "  { rank=same;";
        for (int v = 0; v < g.tree.vertex_count; ++v)
            if (g.level[v] == lvl) s += " v" + std::to_string(v) + ";";
        s += " }\n";
    }
    for (int v = 0; v < g.tree.vertex_count; ++v) {
        std::string legs;
        for (int l = 0; l < g.tree.n_legs; ++l)
            if (g.tree.leg_at[l] == v) legs += (legs.empty() ? "" : ",") + std::to_string(l + 1);
        s += "  v" + std::to_string(v) + " [label=\"" + legs + "\" xlabel=\"level " +
             std::to_string(g.level[v]) + "\"];\n";
    }
    for (int e = 0; e < g.tree.edge_count(); ++e)
        s += "  v" + std::to_string(g.tree.edges[e].first) + " -- v" +
             std::to_string(g.tree.edges[e].second) + " [label=\"k=" + std::to_string(g.kappa[e]) +
             "\"];\n";
    s += "}\n";
    return s;
}

} // namespace msdiff
