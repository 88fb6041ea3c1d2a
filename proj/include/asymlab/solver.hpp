#ifndef ASYMLAB_SOLVER_HPP
#define ASYMLAB_SOLVER_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace asymlab {

// Partial assignment with the unit-propagation trail that produced it.
struct Assignment {
    struct TrailEntry {
        int lit;    // the assigned literal
        int reason; // clause index, or -1 for a seed/decision
    };
    std::vector<std::int8_t> value; // per var (1-based leading slot unused): -1 unknown, 0, 1
    std::vector<TrailEntry> trail;
    bool conflict = false;
    int conflict_clause = -1;

    std::int8_t val(int var) const { return value[static_cast<std::size_t>(var)]; }
};

Assignment make_assignment(const CnfFormula& f);
Assignment make_assignment(const CnfFormula& f, const std::vector<int>& seed_lits);

// Least fixpoint of unit propagation extending the seed; conflict flag set
// iff an empty clause is derived. The closure is order-independent.
Assignment unit_propagate(const CnfFormula& f, const Assignment& seed);

// Incremental counter-based propagation engine with an undo trail. All the
// enumeration-heavy code (backdoor verification, DPLL, subset search) runs on
// this; the pure unit_propagate above is a thin wrapper.
class Propagator {
  public:
    explicit Propagator(const CnfFormula& f);

    // Assigns a literal at a new decision level and propagates.
    // Returns false on conflict; the level must still be popped.
    bool assume(int lit);
    // Assigns several literals at one level.
    bool assume_all(const std::vector<int>& lits);
    void pop();

    bool root_conflict() const { return root_conflict_; }
    int conflict_clause() const { return conflict_clause_; }
    std::int8_t value(int var) const { return val_[static_cast<std::size_t>(var)]; }
    int nvars() const { return nvars_; }
    std::size_t trail_size() const { return trail_.size(); }
    int trail_lit(std::size_t i) const { return trail_[i]; }
    int reason(int var) const { return reason_[static_cast<std::size_t>(var)]; }
    std::size_t num_levels() const { return marks_.size(); }
    std::size_t top_mark() const { return marks_.empty() ? 0 : marks_.back(); }
    bool all_clauses_satisfied() const { return satisfied_ == clause_count_; }
    const std::vector<int>& clause(int idx) const { return *clauses_[static_cast<std::size_t>(idx)]; }
    int clause_count() const { return clause_count_; }

  private:
    bool enqueue(int lit, int reason);
    bool propagate();

    int nvars_ = 0;
    int clause_count_ = 0;
    std::vector<const std::vector<int>*> clauses_;
    std::vector<std::vector<int>> occ_; // occ_[lit-code] = clause ids
    std::vector<int> nonfalse_, sat_;
    std::vector<std::int8_t> val_;
    std::vector<int> reason_;
    std::vector<int> trail_;
    std::vector<std::size_t> marks_;
    std::vector<int> queue_;
    int satisfied_ = 0;
    bool root_conflict_ = false;
    bool conflict_ = false;
    int conflict_clause_ = -1;
};

enum class Heuristic : std::uint8_t { FirstUnassigned, MostOccurrences, MostConstrained };

struct DpllOptions {
    std::vector<int> branch_vars;  // guided prefix; skipped when already assigned
    bool value_true_first = true;  // value order for both guided and fallback branching
    Heuristic fallback = Heuristic::MostConstrained;
    long node_budget = -1;         // <0: unlimited
    bool collect_proof = false;
};

struct DpllTree {
    bool sat = false;
    long nodes = 0;   // total inner + leaf nodes
    long leaves = 0;
    int max_depth = 0; // decisions on the deepest path
    bool budget_exceeded = false;
    std::vector<std::int8_t> model;      // per var 0-based, valid when sat
    std::vector<int> branch_sequence;    // decision variables in first-use order
};

DpllTree dpll(const CnfFormula& f, const DpllOptions& opts = {});

// Resolution proof as a sequence of steps; axioms have ant1=ant2=pivot=0,
// resolvents reference two earlier 1-based steps and their pivot variable.
struct ResolutionProof {
    struct Step {
        std::vector<int> clause; // sorted unique literals
        int ant1 = 0, ant2 = 0;
        int pivot = 0;
        bool axiom() const { return ant1 == 0; }
    };
    std::vector<Step> steps;

    bool refutation() const { return !steps.empty() && steps.back().clause.empty(); }
    std::size_t size() const { return steps.size(); }
};

// Runs DPLL (which must come out UNSAT) and converts the tree into a
// checkable refutation: per-leaf conflict analysis over the UP trail plus one
// resolution per inner node.
ResolutionProof extract_resolution(const CnfFormula& f, const DpllOptions& opts = {});

enum class AxiomMode : std::uint8_t { Exact, Subsumed };

struct CheckResult {
    bool ok = true;
    std::size_t failed_step = 0; // 1-based, valid when !ok
    std::string reason;
};

// Exact mode: every axiom step must be a clause of f. Subsumed mode: an axiom
// step may be any superset of a clause of f (a weakening).
CheckResult check_proof(const CnfFormula& f, const ResolutionProof& p,
                        AxiomMode mode = AxiomMode::Exact);

void write_proof(const ResolutionProof& p, std::ostream& out);
ResolutionProof read_proof(std::istream& in);

// Test-friendly truth-table satisfiability for formulas with few variables.
bool brute_force_sat(const CnfFormula& f);

} // namespace asymlab

#endif
