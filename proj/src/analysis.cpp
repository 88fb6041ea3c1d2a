#include "asymlab/analysis.hpp"

#include "asymlab/backdoor.hpp"
#include "asymlab/encoder.hpp"
#include "asymlab/generators.hpp"
#include "asymlab/pigeonhole.hpp"
#include "asymlab/planning.hpp"
#include "asymlab/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace asymlab {

bool ConstraintGraph::has_edge(int a, int b) const {
    const auto& l = adj[static_cast<std::size_t>(a)];
    return std::binary_search(l.begin(), l.end(), b);
}

std::size_t ConstraintGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& l : adj)
        total += l.size();
    return total / 2;
}

ConstraintGraph constraint_graph(const CnfFormula& f) {
    ConstraintGraph g;
    g.nvars = f.nvars;
    g.adj.assign(static_cast<std::size_t>(f.nvars) + 1, {});
    for (const auto& c : f.clauses)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                int a = std::abs(c[i]), b = std::abs(c[j]);
                if (a == b)
                    continue;
                g.adj[static_cast<std::size_t>(a)].push_back(b);
                g.adj[static_cast<std::size_t>(b)].push_back(a);
            }
    for (auto& l : g.adj) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return g;
}

bool is_clique(const ConstraintGraph& g, const std::vector<int>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (!g.has_edge(vars[i], vars[j]))
                return false;
    return true;
}

namespace {

CutsetWitness make_witness(const CnfFormula& f, int tag, std::vector<int> vars) {
    CutsetWitness w;
    w.timestep = tag;
    w.vars = std::move(vars);
    for (int v : w.vars)
        w.names.push_back(f.var_name(v));
    return w;
}

// The per-step move variables of a MAP encoding, in witness priority order:
// level-1 out-moves, level-1 in-moves, branch-1 up-moves, branch-1 down-moves.
std::vector<int> map_moves_at(const EncodedCnf& enc, int n, int t) {
    std::vector<int> out;
    auto push = [&](const std::string& name) {
        int v = enc.var_of(name, t);
        if (v != 0)
            out.push_back(v);
    };
    for (int i = 1; i <= n; ++i)
        push(map_move("L0", map_node(i, 1)));
    for (int i = 1; i <= n; ++i)
        push(map_move(map_node(i, 1), "L0"));
    for (int j = 2; j <= 2 * n - 3; ++j)
        push(map_move(map_node(1, j - 1), map_node(1, j)));
    for (int j = 2; j <= 2 * n - 3; ++j)
        push(map_move(map_node(1, j), map_node(1, j - 1)));
    return out;
}

CutsetBoundReport map_cutset(int n) {
    CutsetBoundReport rep;
    rep.family = "map";
    rep.n = n;
    rep.k = 1;
    EncodedCnf enc = encode(map_task({n, 1}), 2 * n - 2);
    ConstraintGraph g = constraint_graph(enc.cnf);
    const int b = 2 * n - 2;

    // Per-step target sizes 2n+t-1; step 1 only supports its n out-moves
    // plus NOOP-at-L0, so the shortfall moves into the latest steps, which
    // have spare mutex clique room.
    std::vector<long> want(static_cast<std::size_t>(b) + 1, 0);
    want[1] = n + 1;
    long deficit = (2 * n) - (n + 1);
    std::vector<long> cap(static_cast<std::size_t>(b) + 1, 0);
    for (int t = 2; t <= b; ++t) {
        want[static_cast<std::size_t>(t)] = 2 * n + t - 1;
        cap[static_cast<std::size_t>(t)] =
            t <= 2 * n - 3 ? 2 * n + 2 * t - 3 : 6 * n - 8;
    }
    for (int t = b; t >= 2 && deficit > 0; --t) {
        long extra = std::min(deficit, cap[static_cast<std::size_t>(t)] -
                                           want[static_cast<std::size_t>(t)]);
        want[static_cast<std::size_t>(t)] += extra;
        deficit -= extra;
    }
    if (deficit > 0)
        throw ClqueVerificationError("map witness sizes infeasible");

    for (int t = 1; t <= b; ++t) {
        std::vector<int> moves = map_moves_at(enc, n, t);
        std::vector<int> pick;
        if (t == 1) {
            pick = moves;
            pick.push_back(enc.var_of("NOOP-at-L0", 1));
        } else {
            if (static_cast<long>(moves.size()) < want[static_cast<std::size_t>(t)])
                throw ClqueVerificationError("map witness short of moves at step " +
                                             std::to_string(t));
            pick.assign(moves.begin(),
                        moves.begin() + want[static_cast<std::size_t>(t)]);
        }
        if (!is_clique(g, pick))
            throw ClqueVerificationError("map witness is not a clique at step " +
                                         std::to_string(t));
        rep.bound += static_cast<long>(pick.size()) - 2;
        rep.cliques.push_back(make_witness(enc.cnf, t, std::move(pick)));
    }
    return rep;
}

CutsetBoundReport sbw_cutset(int n, int k) {
    if (k != 0 && k != n - 2)
        throw InvalidParams("sbw cutset bounds are defined for k = 0 and k = n-2");
    CutsetBoundReport rep;
    rep.family = "sbw";
    rep.n = n;
    rep.k = k;
    EncodedCnf enc = encode(sbw_task({n, k}), n - 1);
    ConstraintGraph g = constraint_graph(enc.cnf);

    if (k == 0) {
        for (int t = 2; t <= n - 1; ++t) {
            std::vector<int> pick;
            for (int i = 1; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    if (j == i)
                        continue;
                    std::string target = j == 0 ? "t2" : "g" + std::to_string(j);
                    int v = enc.var_of("movetot2-g" + std::to_string(i) + "-" + target, t);
                    if (v == 0)
                        throw ClqueVerificationError("missing sbw move variable at step " +
                                                     std::to_string(t));
                    pick.push_back(v);
                }
            if (!is_clique(g, pick))
                throw ClqueVerificationError("sbw witness is not a clique");
            rep.bound += static_cast<long>(pick.size()) - 2;
            rep.cliques.push_back(make_witness(enc.cnf, t, std::move(pick)));
        }
        return rep;
    }

    for (int t = 2; t <= n - 2; ++t) {
        std::vector<int> pick;
        auto push = [&](const std::string& name) {
            int v = enc.var_of(name, t);
            if (v == 0)
                throw ClqueVerificationError("missing sbw move variable " + name + "@" +
                                             std::to_string(t));
            pick.push_back(v);
        };
        push("movetot2-g1-t2");
        push("movetot2-g1-g2");
        push("movetot2-g2-t2");
        push("movetot2-g2-g1");
        push("movetot2-b1-t2");
        for (int i = 2; i <= t; ++i)
            push("movetot2-b" + std::to_string(i) + "-b" + std::to_string(i - 1));
        if (!is_clique(g, pick))
            throw ClqueVerificationError("sbw witness is not a clique");
        rep.bound += static_cast<long>(pick.size()) - 2;
        rep.cliques.push_back(make_witness(enc.cnf, t, std::move(pick)));
    }
    return rep;
}

CutsetBoundReport sph_cutset(int n, int k) {
    CutsetBoundReport rep;
    rep.family = "sph";
    rep.n = n;
    rep.k = k;
    CnfFormula f = sph({n, k});
    ConstraintGraph g = constraint_graph(f);
    for (int y = 1; y <= n; ++y) {
        std::vector<int> pick;
        for (int x = 1; x <= n; ++x) {
            int v = f.var_by_name(std::to_string(x) + "_" + std::to_string(y));
            if (v == 0)
                throw ClqueVerificationError("missing sph variable");
            pick.push_back(v);
        }
        if (!is_clique(g, pick))
            throw ClqueVerificationError("sph hole clique check failed");
        rep.bound += static_cast<long>(pick.size()) - 2;
        rep.cliques.push_back(make_witness(f, y, std::move(pick)));
    }
    return rep;
}

} // namespace

CutsetBoundReport cutset_lower_bound(CutsetFamily family, int n, int k) {
    switch (family) {
    case CutsetFamily::Map:
        return map_cutset(n);
    case CutsetFamily::Sbw:
        return sbw_cutset(n, k);
    case CutsetFamily::Sph:
        return sph_cutset(n, k);
    }
    throw InvalidParams("unknown cutset family");
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace

std::string report_batch(const std::vector<BatchRow>& rows, const ReportOptions& opts) {
    std::vector<BatchRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](const BatchRow& a, const BatchRow& b) {
        if (a.family != b.family)
            return a.family < b.family;
        if (a.n != b.n)
            return a.n < b.n;
        return a.k < b.k;
    });

    std::ostringstream out;
    out << "version,family,n,k,m,asym_ratio,dpll_nodes,dpll_depth,size_depth_ratio,"
           "backdoor_guided_nodes,error\n";
    for (const auto& row : sorted) {
        std::string m, ratio, nodes, depth, sdr, guided_nodes, error;
        try {
            PlanningTask task;
            if (row.family == "map")
                task = map_task({row.n, row.k});
            else if (row.family == "sbw")
                task = sbw_task({row.n, row.k});
            else if (row.family == "redherring")
                task = red_herring_task({row.n, row.k});
            else
                throw InvalidParams("unknown family: " + row.family);

            CostOptions copts;
            copts.state_cap = opts.state_cap;
            auto optimum = cost(task, task.goal, copts);
            if (!optimum)
                throw UnsolvableTask("no plan");
            m = std::to_string(*optimum);
            ratio = asym_ratio(task, copts).str();

            if (*optimum < 2) {
                error = "bound-below-one";
            } else {
                EncodedCnf enc = encode(task, static_cast<int>(*optimum) - 1);
                DpllOptions dopts;
                dopts.node_budget = opts.dpll_node_budget;
                DpllTree tree = dpll(enc.cnf, dopts);
                if (tree.budget_exceeded) {
                    error = "node-budget-exceeded";
                } else {
                    nodes = std::to_string(tree.nodes);
                    depth = std::to_string(tree.max_depth);
                    sdr = fmt_double(tree.max_depth > 0
                                         ? static_cast<double>(tree.nodes) / tree.max_depth
                                         : static_cast<double>(tree.nodes));
                    std::optional<BackdoorFamily> guided;
                    if (row.family == "map" && row.k == 1)
                        guided = BackdoorFamily::MapSym;
                    else if (row.family == "map" && row.k == 2 * row.n - 3)
                        guided = BackdoorFamily::MapAsym;
                    else if (row.family == "sbw" && row.k == 0)
                        guided = BackdoorFamily::SbwSym;
                    else if (row.family == "sbw" && row.k == row.n - 2)
                        guided = BackdoorFamily::SbwAsym;
                    if (guided) {
                        DpllOptions gopts;
                        gopts.branch_vars =
                            known_backdoor(*guided, row.n, row.k, enc.cnf).vars;
                        gopts.node_budget = opts.dpll_node_budget;
                        DpllTree gtree = dpll(enc.cnf, gopts);
                        if (!gtree.budget_exceeded)
                            guided_nodes = std::to_string(gtree.nodes);
                    }
                }
            }
        } catch (const InvalidParams&) {
            error = "invalid-params";
        } catch (const UnsolvableTask&) {
            error = "unsolvable";
        } catch (const ResourceLimit&) {
            error = "state-cap-exceeded";
        }
        out << "1," << row.family << ',' << row.n << ',' << row.k << ',' << m << ','
            << ratio << ',' << nodes << ',' << depth << ',' << sdr << ',' << guided_nodes
            << ',' << error << '\n';
    }
    return out.str();
}

} // namespace asymlab
