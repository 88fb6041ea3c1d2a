#include "asymlab/encoder.hpp"

#include "asymlab/solver.hpp"

#include <algorithm>
#include <map>

namespace asymlab {

int EncodedCnf::var_of(std::string_view action_name, int t) const {
    return cnf.var_by_name(std::string(action_name) + "@" + std::to_string(t));
}

std::vector<EncAction> enc_actions(const PlanningTask& task) {
    std::vector<EncAction> out;
    out.reserve(task.actions.size() + task.facts.size());
    for (const auto& a : task.actions)
        out.push_back({a.name, a.pre, a.add, a.del, false, a.group});
    for (FactId f = 0; f < static_cast<FactId>(task.facts.size()); ++f)
        out.push_back({"NOOP-" + task.facts[static_cast<std::size_t>(f)], {f}, {f}, {}, true, 0});
    return out;
}

std::vector<std::vector<int>> presence(const PlanningTask& task, int b) {
    if (b < 1)
        throw InvalidParams("encode: bound must be >= 1");
    auto acts = enc_actions(task);
    const int nfacts = static_cast<int>(task.facts.size());

    std::vector<std::vector<int>> present(static_cast<std::size_t>(b) + 1);
    FactSet init = FactSet::of(nfacts, task.init);
    std::vector<char> achievable(static_cast<std::size_t>(nfacts), 0);

    for (int t = 1; t <= b; ++t) {
        auto& layer = present[static_cast<std::size_t>(t)];
        for (std::size_t ai = 0; ai < acts.size(); ++ai) {
            bool ok = true;
            for (FactId f : acts[ai].pre) {
                bool have = (t == 1) ? init.test(f) : achievable[static_cast<std::size_t>(f)] != 0;
                if (!have) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                layer.push_back(static_cast<int>(ai));
        }
        for (int ai : layer)
            for (FactId f : acts[static_cast<std::size_t>(ai)].add)
                achievable[static_cast<std::size_t>(f)] = 1;
    }
    return present;
}

namespace {

bool interferes(const EncAction& a, const EncAction& b) {
    auto hits = [](const std::vector<FactId>& del, const EncAction& other) {
        for (FactId f : del)
            if (std::find(other.pre.begin(), other.pre.end(), f) != other.pre.end() ||
                std::find(other.add.begin(), other.add.end(), f) != other.add.end())
                return true;
        return false;
    };
    return hits(a.del, b) || hits(b.del, a);
}

bool strict_mutex(const EncAction& a, const EncAction& b) {
    if (!a.is_noop && !b.is_noop)
        return true;
    auto noop_vs = [](const EncAction& noop, const EncAction& other) {
        FactId p = noop.pre.front();
        return std::find(other.del.begin(), other.del.end(), p) != other.del.end();
    };
    if (a.is_noop && noop_vs(a, b))
        return true;
    if (b.is_noop && noop_vs(b, a))
        return true;
    return false;
}

bool incompatible(const EncAction& a, const EncAction& b, MutexMode mode) {
    switch (mode) {
    case MutexMode::Strict:
        return strict_mutex(a, b);
    case MutexMode::Interference:
        return interferes(a, b);
    case MutexMode::CrossGroup:
        return a.group == b.group ? strict_mutex(a, b) : interferes(a, b);
    }
    return false;
}

} // namespace

EncodedCnf encode(const PlanningTask& task, int b) {
    return encode(task, b, task.allow_parallel ? MutexMode::CrossGroup : MutexMode::Strict);
}

EncodedCnf encode(const PlanningTask& task, int b, MutexMode mode) {
    EncodedCnf enc;
    enc.bound = b;
    enc.enc_actions = enc_actions(task);
    enc.present = presence(task, b);

    // Variable indices are lexicographic by (timestep, action name) so that
    // DIMACS output and symbol maps are stable across runs.
    enc.var_index_by_step.assign(static_cast<std::size_t>(b) + 1,
                                 std::vector<int>(enc.enc_actions.size(), 0));
    for (int t = 1; t <= b; ++t) {
        std::vector<int> layer = enc.present[static_cast<std::size_t>(t)];
        std::sort(layer.begin(), layer.end(), [&](int x, int y) {
            return enc.enc_actions[static_cast<std::size_t>(x)].name <
                   enc.enc_actions[static_cast<std::size_t>(y)].name;
        });
        for (int ai : layer) {
            int v = enc.cnf.add_variable(enc.enc_actions[static_cast<std::size_t>(ai)].name + "@" +
                                         std::to_string(t));
            enc.variables.push_back({ai, t});
            enc.var_index_by_step[static_cast<std::size_t>(t)][static_cast<std::size_t>(ai)] = v;
        }
    }

    auto achievers_at = [&](FactId f, int t) {
        std::vector<int> lits;
        for (int ai : enc.present[static_cast<std::size_t>(t)]) {
            const auto& add = enc.enc_actions[static_cast<std::size_t>(ai)].add;
            if (std::find(add.begin(), add.end(), f) != add.end())
                lits.push_back(enc.var_of(ai, t));
        }
        return lits;
    };

    auto add_tagged = [&](std::vector<int> lits, ClauseTag tag) {
        enc.cnf.add_clause(std::move(lits));
        enc.tags.push_back(tag);
    };

    // AC: one clause per present action at t>1 per precondition.
    for (int t = 2; t <= b; ++t)
        for (int ai : enc.present[static_cast<std::size_t>(t)])
            for (FactId p : enc.enc_actions[static_cast<std::size_t>(ai)].pre) {
                std::vector<int> lits{-enc.var_of(ai, t)};
                auto support = achievers_at(p, t - 1);
                lits.insert(lits.end(), support.begin(), support.end());
                add_tagged(std::move(lits), ClauseTag::AC);
            }

    // GC: one clause per goal fact; may legitimately be empty.
    for (FactId g : task.goal)
        add_tagged(achievers_at(g, b), ClauseTag::GC);

    // EC: one clause per incompatible present pair.
    for (int t = 1; t <= b; ++t) {
        const auto& layer = enc.present[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < layer.size(); ++i)
            for (std::size_t j = i + 1; j < layer.size(); ++j) {
                const auto& a = enc.enc_actions[static_cast<std::size_t>(layer[i])];
                const auto& b2 = enc.enc_actions[static_cast<std::size_t>(layer[j])];
                if (incompatible(a, b2, mode))
                    add_tagged({-enc.var_of(layer[i], t), -enc.var_of(layer[j], t)},
                               ClauseTag::EC);
            }
    }
    return enc;
}

std::vector<std::vector<std::string>> decode_plan(const EncodedCnf& enc,
                                                  const std::vector<std::int8_t>& model) {
    std::vector<std::vector<std::string>> steps(static_cast<std::size_t>(enc.bound));
    for (int v = 1; v <= enc.cnf.nvars; ++v) {
        if (v > static_cast<int>(model.size()) || model[static_cast<std::size_t>(v) - 1] != 1)
            continue;
        const auto& info = enc.variables[static_cast<std::size_t>(v) - 1];
        const auto& act = enc.enc_actions[static_cast<std::size_t>(info.enc_action)];
        if (!act.is_noop)
            steps[static_cast<std::size_t>(info.timestep) - 1].push_back(act.name);
    }
    return steps;
}

bool satisfiability_roundtrip(const PlanningTask& task, int b) {
    EncodedCnf enc = encode(task, b);
    DpllTree tree = dpll(enc.cnf);
    auto c = cost(task, task.goal);
    bool reachable = c && *c <= b;
    if (tree.sat != reachable)
        return false;
    if (!tree.sat)
        return true;

    auto steps = decode_plan(enc, tree.model);
    FactSet state = FactSet::of(static_cast<int>(task.facts.size()), task.init);
    for (const auto& step : steps)
        for (const auto& name : step) {
            int ai = task.action_by_name(name);
            if (ai < 0 || !state.contains_all(task.actions[static_cast<std::size_t>(ai)].pre))
                return false;
            state = apply(task, state, task.actions[static_cast<std::size_t>(ai)]);
        }
    return state.contains_all(task.goal);
}

} // namespace asymlab
