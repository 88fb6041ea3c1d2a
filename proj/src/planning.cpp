#include "asymlab/planning.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace asymlab {

FactId PlanningTask::add_fact(std::string fname) {
    facts.push_back(std::move(fname));
    return static_cast<FactId>(facts.size()) - 1;
}

FactId PlanningTask::fact_by_name(std::string_view fname) const {
    if (facts_indexed_ != facts.size()) {
        fact_index_.clear();
        for (std::size_t i = 0; i < facts.size(); ++i)
            fact_index_.emplace(facts[i], static_cast<FactId>(i));
        facts_indexed_ = facts.size();
    }
    auto it = fact_index_.find(std::string(fname));
    return it == fact_index_.end() ? -1 : it->second;
}

int PlanningTask::action_by_name(std::string_view aname) const {
    if (actions_indexed_ != actions.size()) {
        action_index_.clear();
        for (std::size_t i = 0; i < actions.size(); ++i)
            action_index_.emplace(actions[i].name, static_cast<int>(i));
        actions_indexed_ = actions.size();
    }
    auto it = action_index_.find(std::string(aname));
    return it == action_index_.end() ? -1 : it->second;
}

void PlanningTask::check() const {
    std::unordered_set<std::string> seen;
    for (const auto& f : facts)
        if (!seen.insert(f).second)
            throw InvalidParams("duplicate fact name: " + f);
    auto in_range = [&](const std::vector<FactId>& ids) {
        for (FactId f : ids)
            if (f < 0 || f >= static_cast<FactId>(facts.size()))
                return false;
        return true;
    };
    if (!in_range(init) || !in_range(goal))
        throw InvalidParams("init/goal fact out of range");
    seen.clear();
    for (const auto& a : actions) {
        if (!seen.insert(a.name).second)
            throw InvalidParams("duplicate action name: " + a.name);
        if (!in_range(a.pre) || !in_range(a.add) || !in_range(a.del))
            throw InvalidParams("action fact out of range in " + a.name);
        for (FactId f : a.add)
            if (std::find(a.del.begin(), a.del.end(), f) != a.del.end())
                throw InvalidParams("add and del overlap in " + a.name);
    }
}

FactSet FactSet::of(int nfacts, const std::vector<FactId>& ids) {
    FactSet s;
    s.w.assign(static_cast<std::size_t>(nfacts + 63) / 64, 0);
    for (FactId f : ids)
        s.set(f);
    return s;
}

bool FactSet::contains_all(const std::vector<FactId>& ids) const {
    for (FactId f : ids)
        if (!test(f))
            return false;
    return true;
}

std::size_t FactSetHash::operator()(const FactSet& s) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t x : s.w) {
        h ^= x;
        h *= 0x100000001b3ull;
    }
    return h;
}

FactSet apply(const PlanningTask& task, const FactSet& state, const Action& a) {
    (void)task;
    if (!state.contains_all(a.pre))
        throw InapplicableAction("precondition of " + a.name + " not satisfied");
    FactSet next = state;
    for (FactId f : a.del)
        next.reset(f);
    for (FactId f : a.add)
        next.set(f);
    return next;
}

bool validate_plan(const PlanningTask& task, const Plan& plan) {
    FactSet state = FactSet::of(static_cast<int>(task.facts.size()), task.init);
    for (const auto& step : plan) {
        int ai = task.action_by_name(step);
        if (ai < 0)
            throw UnknownAction("unknown action in plan: " + step);
        const Action& a = task.actions[static_cast<std::size_t>(ai)];
        if (!state.contains_all(a.pre))
            return false;
        state = apply(task, state, a);
    }
    return state.contains_all(task.goal);
}

namespace {

// pre ∪ add ∪ del as a bitset, for the independence test of parallel steps.
FactSet footprint(const PlanningTask& task, const Action& a) {
    FactSet s = FactSet::of(static_cast<int>(task.facts.size()), a.pre);
    for (FactId f : a.add)
        s.set(f);
    for (FactId f : a.del)
        s.set(f);
    return s;
}

bool disjoint(const FactSet& a, const FactSet& b) {
    for (std::size_t i = 0; i < a.w.size(); ++i)
        if (a.w[i] & b.w[i])
            return false;
    return true;
}

struct SearchHit {
    long depth;
    // parent index into the visited list and the actions taken, for plan
    // reconstruction; empty when reconstruction is off
    std::vector<int> order; // visited states in discovery order are kept by caller
};

// BFS core shared by cost() and shortest_plan().
std::optional<long> bfs(const PlanningTask& task, const std::vector<FactId>& subgoal,
                        const CostOptions& opts, bool reconstruct,
                        std::vector<std::vector<std::string>>* plan_out) {
    for (FactId f : subgoal)
        if (f < 0 || f >= static_cast<FactId>(task.facts.size()))
            throw InvalidParams("subgoal fact out of range");

    const int nfacts = static_cast<int>(task.facts.size());
    FactSet start = FactSet::of(nfacts, task.init);

    std::unordered_map<FactSet, int, FactSetHash> id_of;
    std::vector<FactSet> states;
    std::vector<long> depth;
    struct Parent {
        int state = -1;
        int a1 = -1, a2 = -1;
    };
    std::vector<Parent> parent;

    auto intern = [&](const FactSet& s) -> int {
        auto [it, fresh] = id_of.emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(s);
            depth.push_back(-1);
            parent.emplace_back();
        }
        return it->second;
    };

    std::vector<FactSet> prints;
    if (task.allow_parallel)
        for (const auto& a : task.actions)
            prints.push_back(footprint(task, a));

    int s0 = intern(start);
    depth[static_cast<std::size_t>(s0)] = 0;
    std::deque<int> queue{s0};

    auto emit_plan = [&](int s) {
        if (!reconstruct)
            return;
        std::vector<std::vector<std::string>> steps;
        for (int cur = s; parent[static_cast<std::size_t>(cur)].state >= 0;
             cur = parent[static_cast<std::size_t>(cur)].state) {
            const Parent& p = parent[static_cast<std::size_t>(cur)];
            std::vector<std::string> step{task.actions[static_cast<std::size_t>(p.a1)].name};
            if (p.a2 >= 0)
                step.push_back(task.actions[static_cast<std::size_t>(p.a2)].name);
            steps.push_back(std::move(step));
        }
        std::reverse(steps.begin(), steps.end());
        *plan_out = std::move(steps);
    };

    if (start.contains_all(subgoal)) {
        if (reconstruct)
            plan_out->clear();
        return 0;
    }

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        FactSet state = states[static_cast<std::size_t>(cur)];
        long d = depth[static_cast<std::size_t>(cur)];

        std::vector<int> applicable;
        for (std::size_t ai = 0; ai < task.actions.size(); ++ai)
            if (state.contains_all(task.actions[ai].pre))
                applicable.push_back(static_cast<int>(ai));

        auto visit = [&](const FactSet& next, int a1, int a2) -> std::optional<long> {
            int id = intern(next);
            if (depth[static_cast<std::size_t>(id)] >= 0)
                return std::nullopt;
            if (states.size() > opts.state_cap)
                throw ResourceLimit("explored-state cap exceeded");
            depth[static_cast<std::size_t>(id)] = d + 1;
            parent[static_cast<std::size_t>(id)] = {cur, a1, a2};
            if (next.contains_all(subgoal)) {
                emit_plan(id);
                return d + 1;
            }
            queue.push_back(id);
            return std::nullopt;
        };

        for (int ai : applicable) {
            FactSet next = apply(task, state, task.actions[static_cast<std::size_t>(ai)]);
            if (auto hit = visit(next, ai, -1))
                return hit;
        }
        if (task.allow_parallel) {
            for (std::size_t i = 0; i < applicable.size(); ++i)
                for (std::size_t j = i + 1; j < applicable.size(); ++j) {
                    int a1 = applicable[i], a2 = applicable[j];
                    if (!disjoint(prints[static_cast<std::size_t>(a1)],
                                  prints[static_cast<std::size_t>(a2)]))
                        continue;
                    FactSet next = apply(task, state, task.actions[static_cast<std::size_t>(a1)]);
                    next = apply(task, next, task.actions[static_cast<std::size_t>(a2)]);
                    if (auto hit = visit(next, a1, a2))
                        return hit;
                }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<long> cost(const PlanningTask& task, const std::vector<FactId>& subgoal,
                         const CostOptions& opts) {
    return bfs(task, subgoal, opts, false, nullptr);
}

std::optional<std::vector<std::vector<std::string>>>
shortest_plan(const PlanningTask& task, const std::vector<FactId>& subgoal,
              const CostOptions& opts) {
    std::vector<std::vector<std::string>> plan;
    if (!bfs(task, subgoal, opts, true, &plan))
        return std::nullopt;
    return plan;
}

Rational asym_ratio(const PlanningTask& task, const CostOptions& opts) {
    if (task.goal.empty())
        throw InvalidParams("asym_ratio undefined for empty goal");
    auto total = cost(task, task.goal, opts);
    if (!total)
        throw UnsolvableTask("goal conjunction unreachable");
    long worst = 0;
    for (FactId g : task.goal) {
        auto c = cost(task, {g}, opts);
        if (!c)
            throw UnsolvableTask("goal fact unreachable: " + task.facts[static_cast<std::size_t>(g)]);
        worst = std::max(worst, *c);
    }
    return Rational(worst, *total);
}

} // namespace asymlab
