#include "asymlab/proof_transform.hpp"

#include "asymlab/generators.hpp"
#include "asymlab/pigeonhole.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace asymlab {

ReductionFunction ReductionFunction::identity(int nvars) {
    ReductionFunction r;
    r.map.assign(static_cast<std::size_t>(nvars) + 1, {});
    return r;
}

void ReductionFunction::validate() const {
    for (std::size_t v = 1; v < map.size(); ++v) {
        if (map[v].kind != Kind::Literal)
            continue;
        int target = std::abs(map[v].lit);
        if (target <= 0 || static_cast<std::size_t>(target) >= map.size())
            throw InvalidReduction("replacement target out of range");
        if (map[static_cast<std::size_t>(target)].kind != Kind::Identity)
            throw InvalidReduction("transitive replacement via variable " +
                                   std::to_string(target));
    }
}

ReductionFunction::Entry ReductionFunction::apply_lit(int lit) const {
    Entry e = map[static_cast<std::size_t>(std::abs(lit))];
    if (e.kind == Kind::Identity)
        return {Kind::Literal, lit};
    if (e.kind == Kind::Literal)
        return {Kind::Literal, lit > 0 ? e.lit : -e.lit};
    if (lit > 0)
        return e;
    return {e.kind == Kind::Zero ? Kind::One : Kind::Zero, 0};
}

namespace {

struct ReducedClause {
    bool has_true = false;
    bool taut = false;
    std::vector<int> lits; // sorted unique
};

ReducedClause reduce_clause(const std::vector<int>& clause, const ReductionFunction& r) {
    ReducedClause out;
    for (int lit : clause) {
        auto e = r.apply_lit(lit);
        if (e.kind == ReductionFunction::Kind::One) {
            out.has_true = true;
            return out;
        }
        if (e.kind == ReductionFunction::Kind::Zero)
            continue;
        out.lits.push_back(e.lit);
    }
    std::sort(out.lits.begin(), out.lits.end());
    out.lits.erase(std::unique(out.lits.begin(), out.lits.end()), out.lits.end());
    for (int lit : out.lits)
        if (std::binary_search(out.lits.begin(), out.lits.end(), -lit)) {
            out.taut = true;
            break;
        }
    return out;
}

} // namespace

CnfFormula apply_reduction(const CnfFormula& f, const ReductionFunction& r) {
    if (r.map.size() != static_cast<std::size_t>(f.nvars) + 1)
        throw InvalidReduction("reduction arity does not match the formula");
    r.validate();

    CnfFormula out;
    std::vector<int> remap(static_cast<std::size_t>(f.nvars) + 1, 0);
    for (int v = 1; v <= f.nvars; ++v)
        if (r.at(v).kind == ReductionFunction::Kind::Identity)
            remap[static_cast<std::size_t>(v)] = out.add_variable(f.var_name(v));

    std::set<std::vector<int>> seen;
    for (const auto& clause : f.clauses) {
        ReducedClause rc = reduce_clause(clause, r);
        if (rc.has_true || rc.taut)
            continue;
        std::vector<int> lits;
        for (int lit : rc.lits) {
            int nv = remap[static_cast<std::size_t>(std::abs(lit))];
            lits.push_back(lit > 0 ? nv : -nv);
        }
        std::sort(lits.begin(), lits.end());
        if (seen.insert(lits).second)
            out.clauses.push_back(std::move(lits));
    }
    return out;
}

bool is_subsumed(const CnfFormula& f1, const CnfFormula& f2) {
    auto named = [](const CnfFormula& f) {
        std::vector<std::set<std::pair<std::string, bool>>> out;
        for (const auto& c : f.clauses) {
            std::set<std::pair<std::string, bool>> nc;
            for (int lit : c)
                nc.emplace(f.var_name(std::abs(lit)), lit > 0);
            out.push_back(std::move(nc));
        }
        return out;
    };
    auto big = named(f1);
    auto small = named(f2);
    for (const auto& c : big) {
        bool hit = false;
        for (const auto& s : small)
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) {
                hit = true;
                break;
            }
        if (!hit)
            return false;
    }
    return true;
}

namespace {

enum class Status : std::uint8_t { True, Taut, Derived };

class TargetProof {
  public:
    explicit TargetProof(const CnfFormula& target) : target_(&target) {
        for (std::size_t i = 0; i < target.clauses.size(); ++i)
            by_clause_.emplace(target.clauses[i], static_cast<int>(i));
    }

    // Emits (once) the first target clause that is a subset of `lits`;
    // 0 if none exists.
    int axiom_subset(const std::vector<int>& lits) {
        int best = -1;
        for (std::size_t i = 0; i < target_->clauses.size(); ++i) {
            const auto& c = target_->clauses[i];
            if (std::includes(lits.begin(), lits.end(), c.begin(), c.end())) {
                best = static_cast<int>(i);
                break;
            }
        }
        if (best < 0)
            return 0;
        return axiom(best);
    }

    int axiom(int clause_idx) {
        auto [it, fresh] = emitted_.emplace(clause_idx, 0);
        if (fresh) {
            proof_.steps.push_back(
                {target_->clauses[static_cast<std::size_t>(clause_idx)], 0, 0, 0});
            it->second = static_cast<int>(proof_.steps.size());
        }
        return it->second;
    }

    int axiom_exact(const std::vector<int>& lits) {
        auto it = by_clause_.find(lits);
        if (it == by_clause_.end())
            return 0;
        return axiom(it->second);
    }

    int resolve(int a, int b, int pivot) {
        const auto& ca = clause(a);
        const auto& cb = clause(b);
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
        ++resolutions_;
        return static_cast<int>(proof_.steps.size());
    }

    const std::vector<int>& clause(int idx) const {
        return proof_.steps[static_cast<std::size_t>(idx) - 1].clause;
    }

    std::size_t size() const { return proof_.steps.size(); }
    unsigned long resolutions() const { return resolutions_; }

    ResolutionProof take_refutation(int final_idx) {
        ResolutionProof out = std::move(proof_);
        if (final_idx > 0 && static_cast<std::size_t>(final_idx) < out.steps.size())
            out.steps.resize(static_cast<std::size_t>(final_idx));
        return out;
    }

  private:
    const CnfFormula* target_;
    std::map<std::vector<int>, int> by_clause_;
    std::map<int, int> emitted_;
    ResolutionProof proof_;
    unsigned long resolutions_ = 0;
};

} // namespace

ResolutionProof transform_proof_reduction(const CnfFormula& f, const ResolutionProof& p,
                                          const ReductionFunction& r,
                                          const CnfFormula& target) {
    if (auto chk = check_proof(f, p); !chk.ok)
        throw InvalidReduction("input proof does not check against the source formula: " +
                               chk.reason);
    if (!p.refutation())
        throw InvalidReduction("input proof is not a refutation");
    if (!is_subsumed(apply_reduction(f, r), target))
        throw InvalidReduction("r*(f) is not subsumed by the target formula");

    // Map surviving f-variables onto target indices by name.
    std::vector<int> tmap(static_cast<std::size_t>(f.nvars) + 1, 0);
    for (int v = 1; v <= f.nvars; ++v)
        if (r.at(v).kind == ReductionFunction::Kind::Identity)
            tmap[static_cast<std::size_t>(v)] = target.var_by_name(f.var_name(v));
    auto to_target = [&](int lit) {
        int tv = tmap[static_cast<std::size_t>(std::abs(lit))];
        if (tv == 0)
            throw InvalidReduction("surviving variable missing from target: " +
                                   f.var_name(std::abs(lit)));
        return lit > 0 ? tv : -tv;
    };

    TargetProof out(target);
    std::vector<Status> status(p.steps.size());
    std::vector<int> derived(p.steps.size(), 0);

    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& step = p.steps[i];
        ReducedClause rc = reduce_clause(step.clause, r);
        if (rc.has_true) {
            status[i] = Status::True;
            continue;
        }
        if (rc.taut) {
            status[i] = Status::Taut;
            continue;
        }
        std::vector<int> rset;
        for (int lit : rc.lits)
            rset.push_back(to_target(lit));
        std::sort(rset.begin(), rset.end());
        status[i] = Status::Derived;

        if (step.axiom()) {
            derived[i] = out.axiom_subset(rset);
            if (derived[i] == 0)
                throw InvalidReduction("no target clause subsumes a reduced axiom");
            continue;
        }

        // Orient the antecedents so `a` holds the positive pivot.
        int a = step.ant1, b = step.ant2;
        const auto& ca = p.steps[static_cast<std::size_t>(a) - 1].clause;
        if (!std::binary_search(ca.begin(), ca.end(), step.pivot))
            std::swap(a, b);
        std::size_t ia = static_cast<std::size_t>(a) - 1;
        std::size_t ib = static_cast<std::size_t>(b) - 1;
        auto rv = r.apply_lit(step.pivot);

        if (rv.kind == ReductionFunction::Kind::One) {
            derived[i] = derived[ib];
        } else if (rv.kind == ReductionFunction::Kind::Zero) {
            derived[i] = derived[ia];
        } else if (status[ia] == Status::Taut) {
            derived[i] = derived[ib];
        } else if (status[ib] == Status::Taut) {
            derived[i] = derived[ia];
        } else if (status[ia] == Status::True || status[ib] == Status::True) {
            // 1 in r(C1) or r(C2) with a literal pivot image forces 1 into
            // r(C3), which was excluded above.
            throw std::logic_error("reduction case analysis: unexpected true antecedent");
        } else {
            int pivot_lit = to_target(rv.lit);
            const auto& da = out.clause(derived[ia]);
            const auto& db = out.clause(derived[ib]);
            bool a_has = std::binary_search(da.begin(), da.end(), pivot_lit);
            bool b_has = std::binary_search(db.begin(), db.end(), -pivot_lit);
            if (!a_has)
                derived[i] = derived[ia]; // deterministic tie-break: prefer C1*
            else if (!b_has)
                derived[i] = derived[ib];
            else
                derived[i] = out.resolve(derived[ia], derived[ib], std::abs(pivot_lit));
        }
        if (status[i] == Status::Derived && derived[i] == 0)
            throw std::logic_error("reduction case analysis failed to derive a clause");
    }

    if (status.back() != Status::Derived || !out.clause(derived.back()).empty())
        throw std::logic_error("transformed proof does not end in the empty clause");
    return out.take_refutation(derived.back());
}

namespace {

int php_x_var(int n, int x, int y) { return (x - 1) * (n - 1) + y; }

} // namespace

ResolutionProof transform_proof_tphp_to_fphp(const ResolutionProof& p, int n,
                                             const CnfFormula& source,
                                             const CnfFormula& target) {
    if (auto chk = check_proof(source, p); !chk.ok)
        throw InvalidReduction("input proof does not check against tphp: " + chk.reason);
    if (!p.refutation())
        throw InvalidReduction("input proof is not a refutation");

    const int x_block = n * (n - 1);
    // px variable decode: source index -> (pigeon, hole), holes 2..n-1.
    auto is_px = [&](int var) { return var > x_block; };
    auto px_pigeon = [&](int var) { return (var - x_block - 1) / (n - 2) + 1; };
    auto px_hole = [&](int var) { return (var - x_block - 1) % (n - 2) + 2; };

    const unsigned long per_step_cap = static_cast<unsigned long>(n) * n + n;

    // t() on a literal, as target literals.
    auto translate_lit = [&](int lit, std::vector<int>& out_lits) {
        int var = std::abs(lit);
        if (!is_px(var)) {
            out_lits.push_back(lit);
            return;
        }
        int x = px_pigeon(var), y = px_hole(var);
        if (lit > 0)
            for (int j = 1; j <= y - 1; ++j)
                out_lits.push_back(php_x_var(n, x, j));
        else
            for (int j = y; j <= n - 1; ++j)
                out_lits.push_back(php_x_var(n, x, j));
    };
    auto translate_clause = [&](const std::vector<int>& clause) {
        std::vector<int> out;
        for (int lit : clause)
            translate_lit(lit, out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    TargetProof out(target);
    std::vector<int> derived(p.steps.size(), 0);

    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& step = p.steps[i];
        unsigned long resolutions_before = out.resolutions();

        if (step.axiom()) {
            derived[i] = out.axiom_exact(translate_clause(step.clause));
            if (derived[i] == 0)
                throw InvalidReduction("translated axiom is not a target clause");
            continue;
        }
        int a = step.ant1, b = step.ant2;
        const auto& ca = p.steps[static_cast<std::size_t>(a) - 1].clause;
        if (!std::binary_search(ca.begin(), ca.end(), step.pivot))
            std::swap(a, b);
        int da = derived[static_cast<std::size_t>(a) - 1];
        int db = derived[static_cast<std::size_t>(b) - 1];
        int w = step.pivot;

        if (!is_px(w)) {
            const auto& la = out.clause(da);
            const auto& lb = out.clause(db);
            bool a_has = std::binary_search(la.begin(), la.end(), w);
            bool b_has = std::binary_search(lb.begin(), lb.end(), -w);
            if (a_has && b_has)
                derived[i] = out.resolve(da, db, w);
            else if (!a_has)
                derived[i] = da;
            else
                derived[i] = db;
        } else {
            int x = px_pigeon(w), y = px_hole(w);
            std::vector<int> splus, sminus;
            for (int j = 1; j <= y - 1; ++j)
                splus.push_back(php_x_var(n, x, j));
            for (int j = y; j <= n - 1; ++j)
                sminus.push_back(php_x_var(n, x, j));

            auto intersects = [&](const std::vector<int>& clause, const std::vector<int>& set) {
                for (int v : set)
                    if (std::binary_search(clause.begin(), clause.end(), v))
                        return true;
                return false;
            };
            if (!intersects(out.clause(da), splus)) {
                derived[i] = da;
            } else if (!intersects(out.clause(db), sminus)) {
                derived[i] = db;
            } else {
                // Eliminate each positive x_j (j >= y) of the negative-side
                // clause by resolving with t(C1)-derivatives; the x_1..x_{y-1}
                // block is cleared with functional clauses in ascending hole
                // order.
                std::vector<int> targets;
                for (int v : sminus)
                    if (std::binary_search(out.clause(db).begin(), out.clause(db).end(), v))
                        targets.push_back(v);
                int chain = db;
                for (int xj : targets) {
                    int ej = da;
                    for (int hi = 1; hi <= y - 1; ++hi) {
                        int xi = php_x_var(n, x, hi);
                        if (!std::binary_search(out.clause(ej).begin(), out.clause(ej).end(),
                                                xi))
                            continue;
                        std::vector<int> functional{-xi, -xj};
                        std::sort(functional.begin(), functional.end());
                        int func = out.axiom_exact(functional);
                        if (func == 0)
                            throw InvalidReduction("missing functional clause for pigeon " +
                                                   std::to_string(x));
                        ej = out.resolve(ej, func, xi);
                    }
                    if (std::binary_search(out.clause(chain).begin(), out.clause(chain).end(),
                                           xj) &&
                        std::binary_search(out.clause(ej).begin(), out.clause(ej).end(), -xj))
                        chain = out.resolve(chain, ej, xj);
                }
                derived[i] = chain;
            }
        }
        if (out.resolutions() - resolutions_before > per_step_cap)
            throw std::logic_error("t-translation exceeded the per-step bound");
    }

    if (!out.clause(derived.back()).empty())
        throw std::logic_error("translated proof does not end in the empty clause");
    return out.take_refutation(derived.back());
}

ReductionFunction map_reduction(int n, const EncodedCnf& enc) {
    if (n < 3)
        throw InvalidParams("map_reduction requires n >= 3");
    const int b = 2 * n - 2;
    if (enc.bound != b)
        throw InvalidParams("map_reduction expects the b = 2n-2 encoding");
    ReductionFunction r = ReductionFunction::identity(enc.cnf.nvars);

    auto var = [&](const std::string& action, int t) {
        int v = enc.var_of(action, t);
        if (v == 0)
            throw InvalidParams("map_reduction: missing variable " + action + "@" +
                                std::to_string(t));
        return v;
    };
    auto out_move = [&](int i) { return map_move("L0", map_node(i, 1)); };
    auto in_move = [&](int i) { return map_move(map_node(i, 1), "L0"); };

    for (int i = 1; i <= n; ++i) {
        for (int t = 2; t <= b; t += 2)
            r.set_zero(var(out_move(i), t));                               // 1
        for (int t = 3; t <= 2 * n - 3; t += 2)
            r.set_zero(var(in_move(i), t));                                // 2a
        for (int t = 2; t <= b; t += 2)
            r.set_literal(var(in_move(i), t), var(out_move(i), t - 1));    // 2b
    }
    for (int j = 2; j <= 2 * n - 3; ++j) {
        for (int t = j; t <= b; ++t)
            r.set_zero(var(map_move(map_node(1, j - 1), map_node(1, j)), t)); // 3
        for (int t = j + 1; t <= b; ++t)
            r.set_zero(var(map_move(map_node(1, j), map_node(1, j - 1)), t)); // 4
    }
    for (int t = 1; t <= b; ++t)
        r.set_zero(var("NOOP-at-L0", t));                                  // 5
    for (int i = 1; i <= n; ++i)
        for (int t = 2; t <= b; ++t)
            r.set_zero(var("NOOP-at-" + map_node(i, 1), t));               // 6
    for (int j = 2; j <= 2 * n - 3; ++j)
        for (int t = j + 1; t <= b; ++t)
            r.set_zero(var("NOOP-at-" + map_node(1, j), t));               // 7
    for (int t = 3; t <= b; ++t)
        r.set_zero(var("NOOP-visited-L0", t));                             // 8
    for (int i = 1; i <= n; ++i) {
        r.set_one(var("NOOP-visited-" + map_node(i, 1), b));               // 9a
        for (int t = 2; t <= 2 * n - 4; t += 2)
            r.set_literal(var("NOOP-visited-" + map_node(i, 1), t),
                          var("NOOP-visited-" + map_node(i, 1), t + 1));   // 9b
    }
    for (int j = 2; j <= 2 * n - 3; ++j)
        for (int t = j + 1; t <= b; ++t)
            r.set_zero(var("NOOP-visited-" + map_node(1, j), t));          // 10
    r.validate();
    return r;
}

std::unordered_map<std::string, std::string> map_renaming(int n) {
    std::unordered_map<std::string, std::string> names;
    for (int i = 1; i <= n; ++i) {
        for (int t = 1; t <= 2 * n - 3; t += 2) {
            int y = (t + 1) / 2;
            names.emplace(map_move("L0", map_node(i, 1)) + "@" + std::to_string(t),
                          std::to_string(i) + "_" + std::to_string(y));
            if (t >= 3)
                names.emplace("NOOP-visited-" + map_node(i, 1) + "@" + std::to_string(t),
                              "p" + std::to_string(i) + "_" + std::to_string(y));
        }
    }
    return names;
}

CnfFormula rename_formula(const CnfFormula& f,
                          const std::unordered_map<std::string, std::string>& names) {
    CnfFormula out = f;
    for (int v = 1; v <= out.nvars; ++v) {
        auto it = names.find(out.names[static_cast<std::size_t>(v)]);
        if (it != names.end())
            out.names[static_cast<std::size_t>(v)] = it->second;
    }
    return out;
}

ResolutionProof rename_proof(const ResolutionProof& p, const CnfFormula& from,
                             const CnfFormula& to,
                             const std::unordered_map<std::string, std::string>& names) {
    std::vector<int> vmap(static_cast<std::size_t>(from.nvars) + 1, 0);
    for (int v = 1; v <= from.nvars; ++v) {
        std::string name = from.var_name(v);
        auto it = names.find(name);
        if (it != names.end())
            name = it->second;
        vmap[static_cast<std::size_t>(v)] = to.var_by_name(name);
    }
    ResolutionProof out;
    for (const auto& s : p.steps) {
        ResolutionProof::Step ns;
        ns.ant1 = s.ant1;
        ns.ant2 = s.ant2;
        for (int lit : s.clause) {
            int tv = vmap[static_cast<std::size_t>(std::abs(lit))];
            if (tv == 0)
                throw InvalidParams("rename_proof: variable missing from target: " +
                                    from.var_name(std::abs(lit)));
            ns.clause.push_back(lit > 0 ? tv : -tv);
        }
        std::sort(ns.clause.begin(), ns.clause.end());
        if (s.pivot != 0) {
            ns.pivot = vmap[static_cast<std::size_t>(s.pivot)];
            if (ns.pivot == 0)
                throw InvalidParams("rename_proof: pivot variable missing from target");
        }
        out.steps.push_back(std::move(ns));
    }
    return out;
}

} // namespace asymlab
