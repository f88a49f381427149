#include "msdiff/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "msdiff/json_io.hpp"

namespace msdiff::cli {

namespace {

Signature parse_mu(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            orders.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw precondition_error("could not parse order '" + item + "' in --mu");
        }
    }
    return Signature(orders); // validates sum = -2 and n >= 3
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// non-increasing integer tuples of length n with entries in [lo, hi] and the
// given sum
void scan_multisets(int n, int lo, int hi, long long sum, std::vector<int>& acc,
                    const std::function<void(const std::vector<int>&)>& fn) {
    if (n == 0) {
        if (sum == 0) fn(acc);
        return;
    }
    int cap = acc.empty() ? hi : std::min(hi, acc.back());
    for (int v = cap; v >= lo; --v) {
        if (sum - v < static_cast<long long>(lo) * (n - 1)) continue;
        if (sum - v > static_cast<long long>(v) * (n - 1)) break;
        acc.push_back(v);
        scan_multisets(n - 1, lo, hi, sum - v, acc, fn);
        acc.pop_back();
    }
}

struct Options {
    std::string mu_spec;
    int max_n = 9;
    std::optional<int> codim;
    bool exceptional_only = false;
    bool want_census = false;
    bool all = true;
    std::string format = "json";
    int scan_n = 0, scan_min = -2, scan_max = 2;
    bool experimental = false;
    std::string tie_break = "lex";
    std::uint64_t seed = 0;
    bool with_plan = false;
};

int run_strata(const Options& o, std::ostream& out) {
    Signature mu = parse_mu(o.mu_spec);
    EnumLimits limits{o.max_n};
    if (o.want_census) {
        auto c = census(mu, limits);
        if (o.format == "table") {
            for (const auto& [codim, count] : c.counts)
                out << "codim " << codim << ": " << count << "\n";
            out << "exceptional divisors: " << c.exceptional.size() << "\n";
        } else {
            emit(out, census_to_json(c));
        }
        return 0;
    }
    auto strata = enumerate_strata(mu, o.codim, limits);
    Json j;
    j["mu"] = mu.orders();
    j["strata"] = Json::array();
    for (const auto& g : strata) {
        if (o.exceptional_only &&
            !(g.codim() == 1 && g.levels_below_top() == 1 && g.tree.edge_count() >= 2))
            continue;
        j["strata"].push_back(graph_to_json(g));
    }
    j["count"] = j["strata"].size();
    emit(out, j);
    return 0;
}

int run_smooth(const Options& o, std::ostream& out) {
    Signature mu = parse_mu(o.mu_spec);
    auto v = classify_smooth(mu, EnumLimits{o.max_n});
    if (o.format == "table") {
        out << "smooth: " << (v.smooth ? "true" : "false") << "\n";
        if (v.family) out << "family: " << *v.family << "\n";
        if (v.witness) out << "witness: " << cherry_to_json(*v.witness, mu.n()).dump() << "\n";
    } else {
        emit(out, verdict_to_json(v, mu.n()));
    }
    return 0;
}

int run_smooth_scan(const Options& o, std::ostream& out) {
    if (o.scan_n < 3) throw precondition_error("smooth-scan: --n must be at least 3");
    Json j;
    j["n"] = o.scan_n;
    j["min"] = o.scan_min;
    j["max"] = o.scan_max;
    j["smooth"] = Json::array();
    long long scanned = 0;
    std::vector<int> acc;
    scan_multisets(o.scan_n, o.scan_min, o.scan_max, -2, acc, [&](const std::vector<int>& ms) {
        ++scanned;
        Signature mu(ms);
        auto v = classify_smooth(mu, EnumLimits{o.max_n});
        if (v.smooth) {
            Json e;
            e["mu"] = ms;
            if (v.family) e["family"] = *v.family;
            j["smooth"].push_back(std::move(e));
        }
    });
    j["scanned"] = scanned;
    emit(out, j);
    return 0;
}

int run_ghost(const Options& o, std::ostream& out, bool prongs) {
    Signature mu = parse_mu(o.mu_spec);
    EnumLimits limits{o.max_n};
    Json j;
    j["mu"] = mu.orders();
    j["strata"] = Json::array();
    bool all_trivial = true;
    for (const auto& g : enumerate_strata(mu, o.codim, limits)) {
        if (g.codim() == 0) continue;
        Json e;
        e["codim"] = g.codim();
        if (prongs) {
            auto orbits = prong_orbits_of(g);
            e["orbits"] = bigint_to_json(orbits);
            if (orbits != 1) all_trivial = false;
        } else {
            auto r = ghost_of(g);
            e["ghost_order"] = bigint_to_json(r.ghost_order);
            e["snf"] = lattice_result_to_json(r)["snf"];
            if (g.levels_below_top() >= 1) e["twist"] = twist_to_json(twist_data(g));
            if (r.ghost_order != 1) all_trivial = false;
        }
        e["graph"] = graph_to_json(g);
        j["strata"].push_back(std::move(e));
    }
    j["all_trivial"] = all_trivial;
    emit(out, j);
    return 0;
}

int run_profile(const Options& o, std::istream& in, std::ostream& out) {
    Signature mu = parse_mu(o.mu_spec);
    Json input = Json::parse(in, nullptr, true);
    if (!input.is_array()) throw precondition_error("profile: stdin must be a JSON array of graphs");
    std::vector<EnhancedLevelGraph> divisors;
    for (const auto& jg : input) divisors.push_back(graph_from_json(jg));
    auto res = intersection_profile(divisors, mu, EnumLimits{o.max_n});
    if (!res) {
        Json j;
        j["empty"] = true;
        emit(out, j);
        return 0;
    }
    emit(out, intersection_to_json(*res));
    return 0;
}

int run_poincare(const Options& o, std::ostream& out) {
    Signature mu = parse_mu(o.mu_spec);
    TowerOptions topts;
    topts.allow_experimental = o.experimental;
    topts.seed = o.seed;
    if (o.tie_break == "lex") topts.tie_break = TieBreak::lex;
    else if (o.tie_break == "revlex") topts.tie_break = TieBreak::revlex;
    else if (o.tie_break == "shuffle") topts.tie_break = TieBreak::shuffle;
    else throw precondition_error("poincare: --tie-break must be lex, revlex or shuffle");
    EnumLimits limits{o.max_n};
    Poly p = poincare_multiscale(mu, topts, limits);
    Json j = poly_to_json(p, mu.n() - 3);
    if (o.with_plan) j["plan"] = plan_to_json(build_blowup_plan(mu, topts, limits));
    emit(out, j);
    return 0;
}

int run_dot(std::istream& in, std::ostream& out) {
    Json input = Json::parse(in, nullptr, true);
    auto g = graph_from_json(input);
    out << graph_to_dot(g);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"boundary-stratum combinatorics of genus-0 multiscale differentials"};
    app.require_subcommand(1);
    Options o;

    auto add_mu = [&](CLI::App* cmd) {
        cmd->add_option("--mu", o.mu_spec, "comma-separated orders, must sum to -2")->required();
    };
    auto add_limits = [&](CLI::App* cmd) {
        cmd->add_option("--max-n", o.max_n, "enumeration bound on marked points (default 9)");
    };

    auto* strata = app.add_subcommand("strata", "enumerate boundary strata or print the census");
    add_mu(strata);
    add_limits(strata);
    int codim_arg = -1;
    strata->add_option("--codim", codim_arg, "only strata of this codimension");
    strata->add_flag("--exceptional", o.exceptional_only, "only divisors exceptional over the base");
    strata->add_flag("--census", o.want_census, "print stratum counts and exceptional divisors");
    strata->add_option("--format", o.format, "json or table");

    auto* smooth = app.add_subcommand("smooth", "smoothness verdict with witness and family");
    add_mu(smooth);
    add_limits(smooth);
    smooth->add_option("--format", o.format, "json or table");

    auto* scan = app.add_subcommand("smooth-scan", "box scan over signatures");
    scan->add_option("--n", o.scan_n, "number of marked points")->required();
    scan->add_option("--min", o.scan_min, "least order")->required();
    scan->add_option("--max", o.scan_max, "greatest order")->required();
    add_limits(scan);

    auto* ghost = app.add_subcommand("ghost", "ghost-group order per stratum");
    add_mu(ghost);
    add_limits(ghost);
    ghost->add_option("--codim", codim_arg, "only strata of this codimension");
    ghost->add_flag("--all", o.all, "all codimensions (default)");

    auto* prongs = app.add_subcommand("prongs", "prong-matching orbit count per stratum");
    add_mu(prongs);
    add_limits(prongs);
    prongs->add_option("--codim", codim_arg, "only strata of this codimension");

    auto* profile = app.add_subcommand("profile", "resolve a divisor intersection (graphs on stdin)");
    add_mu(profile);
    add_limits(profile);

    auto* poincare = app.add_subcommand("poincare", "Betti numbers via the blowup tower");
    add_mu(poincare);
    add_limits(poincare);
    poincare->add_flag("--experimental", o.experimental,
                       "allow the smooth n=5,6 signatures outside the two universal families");
    poincare->add_option("--tie-break", o.tie_break, "lex, revlex or shuffle");
    poincare->add_option("--seed", o.seed, "seed for the shuffle tie-break");
    poincare->add_flag("--plan", o.with_plan, "include the blowup plan");

    auto* dot = app.add_subcommand("dot", "render a stratum graph (JSON on stdin) to DOT");
    (void)dot;

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (codim_arg >= 0) o.codim = codim_arg;
        if (strata->parsed()) return run_strata(o, out);
        if (smooth->parsed()) return run_smooth(o, out);
        if (scan->parsed()) return run_smooth_scan(o, out);
        if (ghost->parsed()) return run_ghost(o, out, false);
        if (prongs->parsed()) return run_ghost(o, out, true);
        if (profile->parsed()) return run_profile(o, in, out);
        if (poincare->parsed()) return run_poincare(o, out);
        if (dot->parsed()) return run_dot(in, out);
    } catch (const resource_limit_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace msdiff::cli
