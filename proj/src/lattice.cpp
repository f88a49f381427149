#include "msdiff/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace msdiff {

namespace {

BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BigInt big_lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt l = a / big_gcd(a, b) * b;
    return l < 0 ? -l : l;
}

} // namespace

std::vector<BigInt> smith_normal_form(BigMatrix m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    const int rank_cap = std::min(rows, cols);
    std::vector<BigInt> diag(rank_cap, 0);

    for (int t = 0; t < rank_cap; ++t) {
        // Find the nonzero entry of least absolute value in the trailing block.
        auto find_pivot = [&](int& pi, int& pj) {
            pi = pj = -1;
            BigInt best = 0;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    if (m[i][j] == 0) continue;
                    BigInt a = m[i][j] < 0 ? BigInt(-m[i][j]) : m[i][j];
                    if (pi < 0 || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            return pi >= 0;
        };

        int pi, pj;
        if (!find_pivot(pi, pj)) break; // trailing block is zero

        bool settled = false;
        while (!settled) {
            std::swap(m[pi], m[t]);
            for (int i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][t]);

            bool dirty = false;
            for (int i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = m[i][t] / m[t][t];
                for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) dirty = true;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = m[t][j] / m[t][t];
                for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) dirty = true;
            }
            if (dirty) {
                find_pivot(pi, pj);
                continue;
            }
            // Pivot now alone in its row and column; enforce divisibility of
            // the remaining block by folding a bad row into row t.
            bool divides_all = true;
            for (int i = t + 1; i < rows && divides_all; ++i)
                for (int j = t + 1; j < cols && divides_all; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (int k = t; k < cols; ++k) m[t][k] += m[i][k];
                        divides_all = false;
                    }
            if (divides_all) settled = true;
            else find_pivot(pi, pj);
        }
        diag[t] = m[t][t] < 0 ? BigInt(-m[t][t]) : m[t][t];
    }
    return diag;
}

TwistData twist_data(const EnhancedLevelGraph& g) {
    TwistData td;
    td.levels = g.levels_below_top();
    if (td.levels < 1)
        throw precondition_error("twist_data: graph has no level passage");
    for (int e = 0; e < g.tree.edge_count(); ++e) {
        if (g.is_horizontal(e)) continue;
        auto [lo, hi] = g.passage_span(e);
        td.edges.push_back({g.kappa[e], lo, hi});
    }
    return td;
}

LatticeIndexResult ghost_group_order(const TwistData& td) {
    const int L = td.levels;
    const int E = static_cast<int>(td.edges.size());
    // lcm of enhancements over each passage
    std::vector<BigInt> ell(L + 1, 0);
    for (int i = 1; i <= L; ++i) {
        BigInt l = 1;
        bool seen = false;
        for (const auto& e : td.edges)
            if (e.crosses(i)) {
                l = big_lcm(l, BigInt(e.kappa));
                seen = true;
            }
        if (!seen) throw precondition_error("twist data invariant violated: passage crossed by no edge");
        ell[i] = l;
    }
    // Generators of the twist lattice in the basis w_i / ell_i.
    BigMatrix m(E, std::vector<BigInt>(L, 0));
    for (int r = 0; r < E; ++r) {
        const auto& e = td.edges[r];
        for (int i = e.first_passage; i <= e.last_passage; ++i) {
            if (ell[i] % e.kappa != 0)
                throw precondition_error("twist lattice inclusion violated: non-integral coordinate");
            m[r][i - 1] = ell[i] / e.kappa;
        }
    }
    auto diag = smith_normal_form(std::move(m));
    LatticeIndexResult res;
    res.ghost_order = 1;
    for (int i = 0; i < std::min<int>(L, static_cast<int>(diag.size())); ++i) {
        if (diag[i] == 0)
            throw precondition_error("twist lattice rank deficient (internal error)");
        res.snf_diagonal.push_back(diag[i]);
        res.ghost_order *= diag[i];
    }
    if (static_cast<int>(res.snf_diagonal.size()) != L)
        throw precondition_error("twist lattice rank deficient (internal error)");
    return res;
}

BigInt prong_orbit_count(const TwistData& td) {
    const int L = td.levels;
    const int E = static_cast<int>(td.edges.size());
    if (E == 0) return 1;
    // Cokernel of Z^L (+) Z^E -> (+)_e Z, columns = rotation generators then
    // the kappa relations.
    BigMatrix m(E, std::vector<BigInt>(L + E, 0));
    for (int r = 0; r < E; ++r) {
        for (int i = td.edges[r].first_passage; i <= td.edges[r].last_passage; ++i) m[r][i - 1] = 1;
        m[r][L + r] = td.edges[r].kappa;
    }
    auto diag = smith_normal_form(std::move(m));
    BigInt orbits = 1;
    for (int i = 0; i < E; ++i) {
        if (i >= static_cast<int>(diag.size()) || diag[i] == 0)
            throw precondition_error("prong cokernel rank deficient (internal error)");
        orbits *= diag[i];
    }
    return orbits;
}

LatticeIndexResult ghost_of(const EnhancedLevelGraph& g) {
    if (g.levels_below_top() == 0) return {BigInt(1), {}};
    return ghost_group_order(twist_data(g));
}

BigInt prong_orbits_of(const EnhancedLevelGraph& g) {
    if (g.levels_below_top() == 0) return 1;
    return prong_orbit_count(twist_data(g));
}

} // namespace msdiff
