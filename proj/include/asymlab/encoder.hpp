#ifndef ASYMLAB_ENCODER_HPP
#define ASYMLAB_ENCODER_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/planning.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asymlab {

enum class ClauseTag : std::uint8_t { AC, GC, EC };

// Which action pairs at the same step get a mutex clause.
//  Strict:       both non-NOOP, or a NOOP for p paired with a deleter of p.
//  Interference: one's delete effect meets the other's pre or add.
//  CrossGroup:   Strict within an action group, Interference across groups.
enum class MutexMode : std::uint8_t { Strict, Interference, CrossGroup };

// Real actions plus one synthesized NOOP per fact, in presence order.
struct EncAction {
    std::string name;
    std::vector<FactId> pre, add, del;
    bool is_noop = false;
    int group = 0;
};

struct EncodedVariable {
    int enc_action; // index into EncodedCnf::enc_actions
    int timestep;   // 1-based
};

struct EncodedCnf {
    CnfFormula cnf; // variable names are "<action>@<t>"
    std::vector<ClauseTag> tags;
    int bound = 0;
    std::vector<EncAction> enc_actions;
    std::vector<EncodedVariable> variables;            // variables[v-1] describes var v
    std::vector<std::vector<int>> present;             // present[t] = enc-action ids, t in 1..bound
    std::vector<std::vector<int>> var_index_by_step;   // [t][enc_action] -> var or 0

    int var_of(int enc_action, int t) const { return var_index_by_step[static_cast<std::size_t>(t)][static_cast<std::size_t>(enc_action)]; }
    int var_of(std::string_view action_name, int t) const;
};

// The task's actions followed by one NOOP per fact ("NOOP-<fact>").
std::vector<EncAction> enc_actions(const PlanningTask& task);

// present[t] (1..b): an action is present at t=1 iff pre ⊆ init, at t>1 iff
// every precondition has a present achiever at t-1.
std::vector<std::vector<int>> presence(const PlanningTask& task, int b);

// Tasks that allow parallel moves default to CrossGroup mutexes, everything
// else to Strict; pass a mode explicitly to override.
EncodedCnf encode(const PlanningTask& task, int b);
EncodedCnf encode(const PlanningTask& task, int b, MutexMode mode);

// Per-step non-NOOP action names of a satisfying model (steps may be empty).
std::vector<std::vector<std::string>> decode_plan(const EncodedCnf& enc,
                                                  const std::vector<std::int8_t>& model);

// End-to-end soundness: DPLL(encode(task,b)) must agree with BFS
// (cost(goal) <= b), and a SAT model must decode into a valid plan.
bool satisfiability_roundtrip(const PlanningTask& task, int b);

} // namespace asymlab

#endif
