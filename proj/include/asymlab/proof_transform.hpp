#ifndef ASYMLAB_PROOF_TRANSFORM_HPP
#define ASYMLAB_PROOF_TRANSFORM_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/encoder.hpp"
#include "asymlab/solver.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>

namespace asymlab {

// Per-variable substitution into {0, 1, a literal over another variable,
// identity}. Transitive replacements are rejected: a variable that is itself
// replaced may not be the target of another replacement.
struct ReductionFunction {
    enum class Kind : std::uint8_t { Identity, Zero, One, Literal };
    struct Entry {
        Kind kind = Kind::Identity;
        int lit = 0; // target literal for Kind::Literal
    };
    std::vector<Entry> map; // 1-based by variable

    static ReductionFunction identity(int nvars);
    void set_zero(int var) { map[static_cast<std::size_t>(var)] = {Kind::Zero, 0}; }
    void set_one(int var) { map[static_cast<std::size_t>(var)] = {Kind::One, 0}; }
    void set_literal(int var, int lit) { map[static_cast<std::size_t>(var)] = {Kind::Literal, lit}; }
    const Entry& at(int var) const { return map[static_cast<std::size_t>(var)]; }

    void validate() const; // throws InvalidReduction

    // r applied to a literal: kind Zero/One with the sign folded in.
    Entry apply_lit(int lit) const;
};

// r*(f): substitute, drop false literals, drop clauses containing a true
// literal or a complementary pair; clauses deduplicated, symbol table keeps
// the surviving variables. Variables are renumbered compactly in their
// original order.
CnfFormula apply_reduction(const CnfFormula& f, const ReductionFunction& r);

// Every clause of f1 has a subset clause in f2 (matched by variable name).
bool is_subsumed(const CnfFormula& f1, const CnfFormula& f2);

// Lemma-style proof transformation: given a refutation p of f and a
// reduction r with r*(f) subsumed by target (over the same variable names),
// produces a refutation of target with at most one new resolution step per
// original step. Checked preconditions throw InvalidReduction.
ResolutionProof transform_proof_reduction(const CnfFormula& f, const ResolutionProof& p,
                                          const ReductionFunction& r,
                                          const CnfFormula& target);

// Expands prefix variables of a tphp/otphp refutation into fphp/ofphp
// clauses (px_y -> x_1..x_{y-1}, -px_y -> x_y..x_{n-1}); at most n^2+n new
// steps per original step. `source` must be tphp(n) or otphp(n), `target`
// fphp(n) or ofphp(n) correspondingly.
ResolutionProof transform_proof_tphp_to_fphp(const ResolutionProof& p, int n,
                                             const CnfFormula& source,
                                             const CnfFormula& target);

// The explicit reduction taking the b=2n-2 encoding of MAP(n,1) down to
// map_tphp(n) (modulo the timestep renaming below).
ReductionFunction map_reduction(int n, const EncodedCnf& enc);

// Bijective renaming of the reduction's surviving variables onto the
// pigeonhole layout: move-L0-Li^1@t -> i_((t+1)/2), NOOP-visited-Li^1@t ->
// pi_((t+1)/2).
std::unordered_map<std::string, std::string> map_renaming(int n);

// Rewrites f's variables through the name map (identity for missing names).
CnfFormula rename_formula(const CnfFormula& f,
                          const std::unordered_map<std::string, std::string>& names);

// Maps proof literals from one formula's variable indexing to another's,
// translating names with the same map.
ResolutionProof rename_proof(const ResolutionProof& p, const CnfFormula& from,
                             const CnfFormula& to,
                             const std::unordered_map<std::string, std::string>& names);

} // namespace asymlab

#endif
