#ifndef ASYMLAB_PLANNING_HPP
#define ASYMLAB_PLANNING_HPP

#include "asymlab/common.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asymlab {

using FactId = int;

struct Action {
    std::string name;
    std::vector<FactId> pre, add, del;
    int group = 0; // component label; only meaningful when parallel moves are allowed

    bool operator==(const Action&) const = default;
};

// STRIPS task. Facts are interned; all operations below treat the task as an
// immutable value.
struct PlanningTask {
    std::string name;
    std::vector<std::string> facts;
    std::vector<Action> actions;
    std::vector<FactId> init, goal;
    // Set by the red-herring generator: plan steps may execute one action per
    // component in parallel.
    bool allow_parallel = false;

    FactId add_fact(std::string name);
    FactId fact_by_name(std::string_view name) const; // -1 if unknown
    int action_by_name(std::string_view name) const;  // -1 if unknown

    // Checks the structural invariants (init/goal/action facts in range,
    // add/del disjoint, unique names). Throws InvalidParams on violation.
    void check() const;

  private:
    mutable std::unordered_map<std::string, FactId> fact_index_;
    mutable std::size_t facts_indexed_ = 0;
    mutable std::unordered_map<std::string, int> action_index_;
    mutable std::size_t actions_indexed_ = 0;
};

// Fixed-width bitset over a task's facts.
struct FactSet {
    std::vector<std::uint64_t> w;

    static FactSet of(int nfacts, const std::vector<FactId>& ids);
    bool test(FactId f) const { return (w[static_cast<std::size_t>(f) >> 6] >> (f & 63)) & 1; }
    void set(FactId f) { w[static_cast<std::size_t>(f) >> 6] |= std::uint64_t(1) << (f & 63); }
    void reset(FactId f) { w[static_cast<std::size_t>(f) >> 6] &= ~(std::uint64_t(1) << (f & 63)); }
    bool contains_all(const std::vector<FactId>& ids) const;
    bool operator==(const FactSet&) const = default;
};

struct FactSetHash {
    std::size_t operator()(const FactSet& s) const;
};

using Plan = std::vector<std::string>; // sequence of action names

// (state \ del) ∪ add; throws InapplicableAction if pre ⊄ state.
FactSet apply(const PlanningTask& task, const FactSet& state, const Action& a);

// True iff sequential execution is applicable throughout and the final state
// contains the goal. Throws UnknownAction for unresolvable names.
bool validate_plan(const PlanningTask& task, const Plan& plan);

struct CostOptions {
    std::size_t state_cap = 10'000'000;
};

// Length of a shortest plan achieving the subgoal, breadth-first over
// reachable states; nullopt if unreachable. For tasks with allow_parallel,
// a step may also be a pair of fully independent actions (disjoint
// pre ∪ add ∪ del), and the returned length counts parallel steps.
// Throws ResourceLimit when the explored-state cap is exceeded.
std::optional<long> cost(const PlanningTask& task, const std::vector<FactId>& subgoal,
                         const CostOptions& opts = {});

// Same search, but also reconstructs one optimal plan from parent links.
// Each step is the set of action names executed in that step.
std::optional<std::vector<std::vector<std::string>>>
shortest_plan(const PlanningTask& task, const std::vector<FactId>& subgoal,
              const CostOptions& opts = {});

// max_{g in goal} cost({g}) / cost(goal), exact.
// Throws InvalidParams on empty goal and UnsolvableTask if cost(goal) is
// infinite.
Rational asym_ratio(const PlanningTask& task, const CostOptions& opts = {});

} // namespace asymlab

#endif
