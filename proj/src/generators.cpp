#include "asymlab/generators.hpp"

#include <utility>

namespace asymlab {

std::string map_node(int branch, int depth) {
    if (depth == 0)
        return "L0";
    return "L" + std::to_string(branch) + "^" + std::to_string(depth);
}

std::string map_move(const std::string& from, const std::string& to) {
    return "move-" + from + "-" + to;
}

namespace {

// Builds one undirected MAP roadmap with node prefix "L" or "R" into the
// task; returns nothing. Branch 1 extends to depth1, other branches depth 1.
void build_map_graph(PlanningTask& task, char prefix, int n, int depth1, int group) {
    auto node = [&](int branch, int depth) {
        std::string s = map_node(branch, depth);
        s[0] = prefix;
        return s;
    };
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i <= n; ++i)
        edges.emplace_back(node(0, 0), node(i, 1));
    for (int j = 2; j <= depth1; ++j)
        edges.emplace_back(node(1, j - 1), node(1, j));

    std::vector<std::string> nodes{node(0, 0)};
    for (int i = 1; i <= n; ++i)
        nodes.push_back(node(i, 1));
    for (int j = 2; j <= depth1; ++j)
        nodes.push_back(node(1, j));

    for (const auto& x : nodes) {
        task.add_fact("at-" + x);
        task.add_fact("visited-" + x);
    }
    auto add_move = [&](const std::string& from, const std::string& to) {
        Action a;
        a.name = map_move(from, to);
        a.pre = {task.fact_by_name("at-" + from)};
        a.add = {task.fact_by_name("at-" + to), task.fact_by_name("visited-" + to)};
        a.del = {task.fact_by_name("at-" + from)};
        a.group = group;
        task.actions.push_back(std::move(a));
    };
    for (const auto& [x, y] : edges) {
        add_move(x, y);
        add_move(y, x);
    }
    task.init.push_back(task.fact_by_name("at-" + node(0, 0)));
}

} // namespace

PlanningTask map_task(const MapParams& p) {
    if (p.n < 2)
        throw InvalidParams("map: n must be >= 2");
    if (p.k % 2 == 0 || p.k < 1 || p.k > 2 * p.n - 1)
        throw InvalidParams("map: k must be odd and within 1..2n-1");

    PlanningTask task;
    task.name = "map-n" + std::to_string(p.n) + "-k" + std::to_string(p.k);
    int depth1 = std::max(2 * p.n - 3, p.k);
    build_map_graph(task, 'L', p.n, depth1, 0);

    task.goal.push_back(task.fact_by_name("visited-" + map_node(1, p.k)));
    int other_goals = (p.n - 1) - (p.k - 1) / 2;
    for (int i = 2; i <= other_goals + 1; ++i)
        task.goal.push_back(task.fact_by_name("visited-" + map_node(i, 1)));
    task.check();
    return task;
}

namespace {

std::string sbw_block(int good, int idx) { return (good ? "g" : "b") + std::to_string(idx); }

} // namespace

PlanningTask sbw_task(const SbwParams& p) {
    if (p.n < 2)
        throw InvalidParams("sbw: n must be >= 2");
    if (p.k < 0 || p.k > p.n)
        throw InvalidParams("sbw: k must be within 0..n");

    PlanningTask task;
    task.name = "sbw-n" + std::to_string(p.n) + "-k" + std::to_string(p.k);

    std::vector<std::string> blocks;
    for (int i = 1; i <= p.k; ++i)
        blocks.push_back(sbw_block(false, i));
    int ngood = p.n - p.k;
    for (int i = 1; i <= ngood; ++i)
        blocks.push_back(sbw_block(true, i));

    // Legal stacking pairs (mover, target). t2 is named "t2".
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 2; i <= p.k; ++i)
        pairs.emplace_back(sbw_block(false, i), sbw_block(false, i - 1));
    if (p.k >= 1) {
        pairs.emplace_back(sbw_block(false, 1), "t2");
        for (int i = 1; i <= ngood; ++i)
            pairs.emplace_back(sbw_block(false, 1), sbw_block(true, i));
    }
    for (int i = 1; i <= ngood; ++i) {
        pairs.emplace_back(sbw_block(true, i), "t2");
        for (int j = 1; j <= ngood; ++j)
            if (j != i)
                pairs.emplace_back(sbw_block(true, i), sbw_block(true, j));
    }

    for (const auto& x : blocks) {
        task.add_fact("ontable-" + x);
        task.add_fact("abovet2-" + x);
    }
    task.add_fact("clear-t2");
    // A block carries a clear fact only if something can be stacked onto it.
    for (const auto& x : blocks)
        for (const auto& [mover, target] : pairs)
            if (target == x) {
                task.add_fact("clear-" + x);
                break;
            }
    for (const auto& [mover, target] : pairs)
        task.add_fact("on-" + mover + "-" + target);

    for (const auto& [mover, target] : pairs) {
        FactId on = task.fact_by_name("on-" + mover + "-" + target);
        FactId clear_target = task.fact_by_name("clear-" + target);
        Action to;
        to.name = "movetot2-" + mover + "-" + target;
        to.pre = {task.fact_by_name("ontable-" + mover), clear_target};
        if (target != "t2")
            to.pre.push_back(task.fact_by_name("abovet2-" + target));
        to.add = {on, task.fact_by_name("abovet2-" + mover)};
        to.del = {task.fact_by_name("ontable-" + mover), clear_target};
        task.actions.push_back(std::move(to));

        Action from;
        from.name = "movefromt2-" + mover + "-" + target;
        from.pre = {on};
        // The moved block must be clear; blocks nothing can be stacked onto
        // carry no clear fact and are clear by construction.
        FactId clear_mover = task.fact_by_name("clear-" + mover);
        if (clear_mover >= 0)
            from.pre.push_back(clear_mover);
        from.add = {task.fact_by_name("ontable-" + mover), clear_target};
        from.del = {on, task.fact_by_name("abovet2-" + mover)};
        task.actions.push_back(std::move(from));
    }

    for (const auto& x : blocks) {
        task.init.push_back(task.fact_by_name("ontable-" + x));
        FactId c = task.fact_by_name("clear-" + x);
        if (c >= 0)
            task.init.push_back(c);
    }
    task.init.push_back(task.fact_by_name("clear-t2"));
    for (const auto& x : blocks)
        task.goal.push_back(task.fact_by_name("abovet2-" + x));
    task.check();
    return task;
}

PlanningTask red_herring_task(const RedHerringParams& p) {
    if (p.n < 2)
        throw InvalidParams("redherring: n must be >= 2");
    if (p.k < 1 || p.k > 2 * p.n - 2)
        throw InvalidParams("redherring: k must be within 1..2n-2");

    PlanningTask task;
    task.name = "redherring-n" + std::to_string(p.n) + "-k" + std::to_string(p.k);
    task.allow_parallel = true;
    build_map_graph(task, 'L', p.n, std::max(2 * p.n - 3, p.k), 0);
    build_map_graph(task, 'R', p.n, 2 * p.n - 3, 1);

    std::string left_goal = map_node(1, p.k);
    left_goal[0] = 'L';
    task.goal.push_back(task.fact_by_name("visited-" + left_goal));
    for (int i = 1; i <= p.n; ++i) {
        std::string node = map_node(i, 1);
        node[0] = 'R';
        task.goal.push_back(task.fact_by_name("visited-" + node));
    }
    task.check();
    return task;
}

} // namespace asymlab
