#include "asymlab/solver.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace asymlab {

namespace {
inline int lit_code(int lit) { return lit > 0 ? 2 * lit : -2 * lit + 1; }
} // namespace

Propagator::Propagator(const CnfFormula& f) {
    nvars_ = f.nvars;
    clause_count_ = static_cast<int>(f.clauses.size());
    clauses_.reserve(f.clauses.size());
    for (const auto& c : f.clauses)
        clauses_.push_back(&c);
    occ_.assign(2 * static_cast<std::size_t>(nvars_) + 2, {});
    nonfalse_.resize(f.clauses.size());
    sat_.assign(f.clauses.size(), 0);
    val_.assign(static_cast<std::size_t>(nvars_) + 1, -1);
    reason_.assign(static_cast<std::size_t>(nvars_) + 1, -1);

    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
        const auto& c = f.clauses[ci];
        nonfalse_[ci] = static_cast<int>(c.size());
        for (int lit : c)
            occ_[static_cast<std::size_t>(lit_code(lit))].push_back(static_cast<int>(ci));
    }

    // Root-level propagation: empty clauses conflict outright, unit clauses
    // seed the queue.
    for (std::size_t ci = 0; ci < f.clauses.size() && !conflict_; ++ci) {
        if (f.clauses[ci].empty()) {
            conflict_ = true;
            conflict_clause_ = static_cast<int>(ci);
        } else if (f.clauses[ci].size() == 1) {
            if (!enqueue(f.clauses[ci][0], static_cast<int>(ci)))
                break;
        }
    }
    if (!conflict_)
        propagate();
    root_conflict_ = conflict_;
}

bool Propagator::enqueue(int lit, int reason) {
    int v = std::abs(lit);
    std::int8_t want = lit > 0 ? 1 : 0;
    if (val_[static_cast<std::size_t>(v)] != -1) {
        if (val_[static_cast<std::size_t>(v)] == want)
            return true;
        conflict_ = true;
        conflict_clause_ = reason;
        return false;
    }
    val_[static_cast<std::size_t>(v)] = want;
    reason_[static_cast<std::size_t>(v)] = reason;
    trail_.push_back(lit);
    queue_.push_back(lit);
    return true;
}

bool Propagator::propagate() {
    while (!queue_.empty()) {
        int lit = queue_.back();
        queue_.pop_back();
        // Satisfied clauses.
        for (int ci : occ_[static_cast<std::size_t>(lit_code(lit))]) {
            if (sat_[static_cast<std::size_t>(ci)]++ == 0)
                ++satisfied_;
        }
        // Clauses losing a literal.
        for (int ci : occ_[static_cast<std::size_t>(lit_code(-lit))]) {
            int left = --nonfalse_[static_cast<std::size_t>(ci)];
            if (sat_[static_cast<std::size_t>(ci)] > 0 || conflict_)
                continue;
            if (left == 0) {
                conflict_ = true;
                conflict_clause_ = ci;
            } else if (left == 1) {
                for (int l : *clauses_[static_cast<std::size_t>(ci)]) {
                    std::int8_t v = val_[static_cast<std::size_t>(std::abs(l))];
                    if (v == -1) {
                        enqueue(l, ci);
                        break;
                    }
                }
            }
        }
    }
    return !conflict_;
}

bool Propagator::assume(int lit) { return assume_all({lit}); }

bool Propagator::assume_all(const std::vector<int>& lits) {
    marks_.push_back(trail_.size());
    if (conflict_)
        return false;
    for (int lit : lits) {
        if (!enqueue(lit, -1))
            break;
        if (conflict_)
            break;
    }
    if (!conflict_)
        propagate();
    return !conflict_;
}

void Propagator::pop() {
    std::size_t mark = marks_.back();
    marks_.pop_back();
    while (trail_.size() > mark) {
        int lit = trail_.back();
        trail_.pop_back();
        for (int ci : occ_[static_cast<std::size_t>(lit_code(lit))]) {
            if (--sat_[static_cast<std::size_t>(ci)] == 0)
                --satisfied_;
        }
        for (int ci : occ_[static_cast<std::size_t>(lit_code(-lit))])
            ++nonfalse_[static_cast<std::size_t>(ci)];
        val_[static_cast<std::size_t>(std::abs(lit))] = -1;
        reason_[static_cast<std::size_t>(std::abs(lit))] = -1;
    }
    queue_.clear();
    conflict_ = root_conflict_;
    conflict_clause_ = root_conflict_ ? conflict_clause_ : -1;
}

Assignment make_assignment(const CnfFormula& f) {
    Assignment a;
    a.value.assign(static_cast<std::size_t>(f.nvars) + 1, -1);
    return a;
}

Assignment make_assignment(const CnfFormula& f, const std::vector<int>& seed_lits) {
    Assignment a = make_assignment(f);
    for (int lit : seed_lits) {
        a.value[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : 0;
        a.trail.push_back({lit, -1});
    }
    return a;
}

Assignment unit_propagate(const CnfFormula& f, const Assignment& seed) {
    Propagator prop(f);
    std::vector<int> seeds;
    for (const auto& e : seed.trail)
        seeds.push_back(e.lit);
    bool ok = prop.assume_all(seeds);
    Assignment out = make_assignment(f);
    for (std::size_t i = 0; i < prop.trail_size(); ++i) {
        int lit = prop.trail_lit(i);
        out.value[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : 0;
        out.trail.push_back({lit, prop.reason(std::abs(lit))});
    }
    out.conflict = !ok;
    out.conflict_clause = ok ? -1 : prop.conflict_clause();
    return out;
}

namespace {

class ProofBuilder {
  public:
    explicit ProofBuilder(const CnfFormula& f) : f_(&f) {}

    ResolutionProof take() { return std::move(proof_); }

    int axiom(int clause_id) {
        auto [it, fresh] = axiom_index_.emplace(clause_id, 0);
        if (fresh) {
            proof_.steps.push_back({f_->clauses[static_cast<std::size_t>(clause_id)], 0, 0, 0});
            it->second = static_cast<int>(proof_.steps.size());
        }
        return it->second;
    }

    int resolve(int a, int b, int pivot) {
        const auto& ca = proof_.steps[static_cast<std::size_t>(a) - 1].clause;
        const auto& cb = proof_.steps[static_cast<std::size_t>(b) - 1].clause;
        std::vector<int> res;
        res.reserve(ca.size() + cb.size());
        for (int l : ca)
            if (l != pivot && l != -pivot)
                res.push_back(l);
        for (int l : cb)
            if (l != pivot && l != -pivot)
                res.push_back(l);
        std::sort(res.begin(), res.end());
        res.erase(std::unique(res.begin(), res.end()), res.end());
        proof_.steps.push_back({std::move(res), a, b, pivot});
        return static_cast<int>(proof_.steps.size());
    }

    const std::vector<int>& clause(int idx) const {
        return proof_.steps[static_cast<std::size_t>(idx) - 1].clause;
    }

  private:
    const CnfFormula* f_;
    ResolutionProof proof_;
    std::unordered_map<int, int> axiom_index_;
};

struct DpllEngine {
    const CnfFormula& f;
    const DpllOptions& opts;
    Propagator prop;
    DpllTree tree;
    ProofBuilder proof;
    std::vector<char> in_sequence;
    std::vector<long> occ_count;

    DpllEngine(const CnfFormula& formula, const DpllOptions& options)
        : f(formula), opts(options), prop(formula), proof(formula),
          in_sequence(static_cast<std::size_t>(formula.nvars) + 1, 0) {}

    int pick_branch_var() {
        for (int v : opts.branch_vars)
            if (v >= 1 && v <= f.nvars && prop.value(v) == -1)
                return v;
        switch (opts.fallback) {
        case Heuristic::FirstUnassigned:
            for (int v = 1; v <= f.nvars; ++v)
                if (prop.value(v) == -1)
                    return v;
            return 0;
        case Heuristic::MostOccurrences: {
            if (occ_count.empty()) {
                occ_count.assign(static_cast<std::size_t>(f.nvars) + 1, 0);
                for (const auto& c : f.clauses)
                    for (int l : c)
                        ++occ_count[static_cast<std::size_t>(std::abs(l))];
            }
            int best = 0;
            long best_score = -1;
            for (int v = 1; v <= f.nvars; ++v)
                if (prop.value(v) == -1 && occ_count[static_cast<std::size_t>(v)] > best_score) {
                    best = v;
                    best_score = occ_count[static_cast<std::size_t>(v)];
                }
            return best;
        }
        case Heuristic::MostConstrained: {
            // Most occurrences among the currently shortest unresolved
            // clauses; deterministic tie-break by variable index.
            std::vector<std::vector<int>> shortest_lits;
            int min_len = f.nvars + 2;
            for (int ci = 0; ci < prop.clause_count(); ++ci) {
                const auto& c = prop.clause(ci);
                std::vector<int> open;
                bool sat = false;
                for (int l : c) {
                    std::int8_t v = prop.value(std::abs(l));
                    if (v == -1)
                        open.push_back(l);
                    else if ((v == 1) == (l > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat || open.empty())
                    continue;
                int len = static_cast<int>(open.size());
                if (len < min_len) {
                    min_len = len;
                    shortest_lits.clear();
                }
                if (len == min_len)
                    shortest_lits.push_back(std::move(open));
            }
            std::vector<long> score(static_cast<std::size_t>(f.nvars) + 1, 0);
            for (const auto& open : shortest_lits)
                for (int l : open)
                    ++score[static_cast<std::size_t>(std::abs(l))];
            int best = 0;
            long best_score = 0;
            for (int v = 1; v <= f.nvars; ++v)
                if (prop.value(v) == -1 && score[static_cast<std::size_t>(v)] > best_score) {
                    best = v;
                    best_score = score[static_cast<std::size_t>(v)];
                }
            if (best)
                return best;
            for (int v = 1; v <= f.nvars; ++v)
                if (prop.value(v) == -1)
                    return v;
            return 0;
        }
        }
        return 0;
    }

    // Resolves implications assigned at trail positions >= from_mark out of
    // the proof clause (newest first); decision literals stay. Implications
    // of older levels are left for the owning ancestor node, so each level's
    // propagation is resolved out once rather than once per descendant leaf.
    int analyze_range(int cur, std::size_t from_mark) {
        std::vector<char> in_clause(static_cast<std::size_t>(f.nvars) + 1, 0);
        for (int l : proof.clause(cur))
            in_clause[static_cast<std::size_t>(std::abs(l))] = 1;
        for (std::size_t i = prop.trail_size(); i-- > from_mark;) {
            int lit = prop.trail_lit(i);
            int v = std::abs(lit);
            if (!in_clause[static_cast<std::size_t>(v)])
                continue;
            int reason = prop.reason(v);
            if (reason < 0)
                continue; // decision literal stays
            // The clause contains ¬lit; the reason clause contains lit.
            int ax = proof.axiom(reason);
            cur = proof.resolve(cur, ax, v);
            for (int l : proof.clause(cur))
                in_clause[static_cast<std::size_t>(std::abs(l))] = 1;
            in_clause[static_cast<std::size_t>(v)] = 0;
        }
        return cur;
    }

    int analyze_leaf() {
        return analyze_range(proof.axiom(prop.conflict_clause()), prop.top_mark());
    }

    struct NodeResult {
        bool sat = false;
        bool aborted = false;
        int clause_idx = 0; // proof index (UNSAT with proof collection only)
    };

    NodeResult node(int depth) {
        ++tree.nodes;
        tree.max_depth = std::max(tree.max_depth, depth);
        if (opts.node_budget >= 0 && tree.nodes > opts.node_budget) {
            tree.budget_exceeded = true;
            return {false, true, 0};
        }
        if (prop.conflict_clause() >= 0 && (depth > 0 || prop.root_conflict())) {
            ++tree.leaves;
            NodeResult r;
            if (opts.collect_proof)
                r.clause_idx = analyze_leaf();
            return r;
        }
        if (prop.all_clauses_satisfied()) {
            ++tree.leaves;
            return {true, false, 0};
        }
        int v = pick_branch_var();
        if (v == 0) {
            // Fully assigned without conflict: model found.
            ++tree.leaves;
            return {true, false, 0};
        }
        if (!in_sequence[static_cast<std::size_t>(v)]) {
            in_sequence[static_cast<std::size_t>(v)] = 1;
            tree.branch_sequence.push_back(v);
        }
        std::array<int, 2> order{opts.value_true_first ? v : -v,
                                 opts.value_true_first ? -v : v};
        std::array<int, 2> child_clause{0, 0};
        for (int side = 0; side < 2; ++side) {
            prop.assume(order[static_cast<std::size_t>(side)]);
            NodeResult r = node(depth + 1);
            if (r.sat) {
                extract_model();
                prop.pop();
                return r;
            }
            prop.pop();
            if (r.aborted)
                return r;
            child_clause[static_cast<std::size_t>(side)] = r.clause_idx;
        }
        NodeResult out;
        if (opts.collect_proof) {
            int pos_side = opts.value_true_first ? 0 : 1; // side where v was assumed true
            int c_true = child_clause[static_cast<std::size_t>(pos_side)];
            int c_false = child_clause[static_cast<std::size_t>(1 - pos_side)];
            // The v=true child may derive a clause containing ¬v, the v=false
            // child one containing v.
            bool true_has = contains_lit(c_true, -v);
            bool false_has = contains_lit(c_false, v);
            if (true_has && false_has)
                out.clause_idx = proof.resolve(c_false, c_true, v);
            else if (!true_has)
                out.clause_idx = c_true;
            else
                out.clause_idx = c_false;
            // Clear this node's own propagation out of the clause.
            out.clause_idx = analyze_range(out.clause_idx, prop.top_mark());
        }
        return out;
    }

    bool contains_lit(int idx, int lit) const {
        const auto& c = proof.clause(idx);
        return std::binary_search(c.begin(), c.end(), lit);
    }

    void extract_model() {
        if (!tree.model.empty())
            return;
        tree.model.assign(static_cast<std::size_t>(f.nvars), 0);
        for (int v = 1; v <= f.nvars; ++v) {
            std::int8_t x = prop.value(v);
            tree.model[static_cast<std::size_t>(v) - 1] = x == -1 ? 1 : x;
        }
    }

    const std::vector<int>& clause_of(int idx) const { return proof.clause(idx); }
};

} // namespace

DpllTree dpll(const CnfFormula& f, const DpllOptions& opts) {
    DpllEngine engine(f, opts);
    auto r = engine.node(0);
    engine.tree.sat = r.sat;
    return engine.tree;
}

ResolutionProof extract_resolution(const CnfFormula& f, const DpllOptions& opts) {
    DpllOptions o = opts;
    o.collect_proof = true;
    o.node_budget = -1;
    DpllEngine engine(f, o);
    auto r = engine.node(0);
    if (r.sat)
        throw std::logic_error("extract_resolution requires an unsatisfiable formula");
    ResolutionProof proof = engine.proof.take();
    // The root clause is empty over decisions; it is the final step already
    // unless subsumption skipped intermediate resolutions.
    if (!proof.steps.empty() && !proof.steps.back().clause.empty()) {
        // r.clause_idx points at the (empty) root clause somewhere earlier.
        ResolutionProof trimmed;
        trimmed.steps.assign(proof.steps.begin(),
                             proof.steps.begin() + r.clause_idx);
        proof = std::move(trimmed);
    }
    return proof;
}

CheckResult check_proof(const CnfFormula& f, const ResolutionProof& p, AxiomMode mode) {
    auto fail = [](std::size_t step, std::string why) {
        return CheckResult{false, step, std::move(why)};
    };
    std::set<std::vector<int>> axioms = f.clause_set();
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& s = p.steps[i];
        if (!std::is_sorted(s.clause.begin(), s.clause.end()))
            return fail(i + 1, "clause literals not sorted");
        for (int l : s.clause)
            if (l == 0 || std::abs(l) > f.nvars)
                return fail(i + 1, "literal out of range");
        if (s.axiom()) {
            if (mode == AxiomMode::Exact) {
                if (!axioms.count(s.clause))
                    return fail(i + 1, "axiom not in formula");
            } else {
                bool ok = false;
                for (const auto& c : axioms) {
                    if (std::includes(s.clause.begin(), s.clause.end(), c.begin(), c.end())) {
                        ok = true;
                        break;
                    }
                }
                if (!ok)
                    return fail(i + 1, "axiom is not a weakening of any formula clause");
            }
            continue;
        }
        if (s.ant1 < 1 || s.ant2 < 1 || static_cast<std::size_t>(s.ant1) > i ||
            static_cast<std::size_t>(s.ant2) > i)
            return fail(i + 1, "antecedent index out of range");
        if (s.pivot < 1 || s.pivot > f.nvars)
            return fail(i + 1, "pivot out of range");
        const auto& a = p.steps[static_cast<std::size_t>(s.ant1) - 1].clause;
        const auto& b = p.steps[static_cast<std::size_t>(s.ant2) - 1].clause;
        bool pos_in_a = std::binary_search(a.begin(), a.end(), s.pivot);
        bool neg_in_b = std::binary_search(b.begin(), b.end(), -s.pivot);
        bool neg_in_a = std::binary_search(a.begin(), a.end(), -s.pivot);
        bool pos_in_b = std::binary_search(b.begin(), b.end(), s.pivot);
        if (!((pos_in_a && neg_in_b) || (neg_in_a && pos_in_b)))
            return fail(i + 1, "pivot does not appear with opposite signs");
        std::vector<int> res;
        for (int l : a)
            if (l != s.pivot && l != -s.pivot)
                res.push_back(l);
        for (int l : b)
            if (l != s.pivot && l != -s.pivot)
                res.push_back(l);
        std::sort(res.begin(), res.end());
        res.erase(std::unique(res.begin(), res.end()), res.end());
        if (res != s.clause)
            return fail(i + 1, "clause is not the resolvent of its antecedents");
    }
    return {};
}

void write_proof(const ResolutionProof& p, std::ostream& out) {
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& s = p.steps[i];
        out << (i + 1) << ' ';
        for (int l : s.clause)
            out << l << ' ';
        out << "0 " << s.ant1 << ' ' << s.ant2 << ' ' << s.pivot << '\n';
    }
}

ResolutionProof read_proof(std::istream& in) {
    ResolutionProof p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream row(line);
        long idx;
        if (!(row >> idx))
            throw ParseError("bad proof line: " + line);
        if (idx != static_cast<long>(p.steps.size()) + 1)
            throw ParseError("proof step indices must be consecutive: " + line);
        ResolutionProof::Step s;
        int lit;
        while (row >> lit && lit != 0)
            s.clause.push_back(lit);
        if (!(row >> s.ant1 >> s.ant2 >> s.pivot))
            throw ParseError("proof line missing antecedents: " + line);
        std::sort(s.clause.begin(), s.clause.end());
        s.clause.erase(std::unique(s.clause.begin(), s.clause.end()), s.clause.end());
        p.steps.push_back(std::move(s));
    }
    return p;
}

bool brute_force_sat(const CnfFormula& f) {
    if (f.nvars > 26)
        throw CapExceeded("brute force limited to 26 variables");
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << f.nvars); ++m) {
        bool ok = true;
        for (const auto& c : f.clauses) {
            bool sat = false;
            for (int l : c) {
                bool v = (m >> (std::abs(l) - 1)) & 1;
                if ((l > 0) == v) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace asymlab
