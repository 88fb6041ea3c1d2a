#ifndef ASYMLAB_CNF_HPP
#define ASYMLAB_CNF_HPP

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asymlab {

// Clause database with a symbol table mapping variable indices to structured
// names. Literals are DIMACS-style signed ints; clauses are kept sorted with
// duplicates removed. The clause list may legitimately contain the empty
// clause.
struct CnfFormula {
    int nvars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> names; // 1-based; names[0] unused

    CnfFormula() { names.emplace_back(); }

    int add_variable(std::string name);
    void add_clause(std::vector<int> lits);

    // 0 if the name is unknown.
    int var_by_name(std::string_view name) const;
    const std::string& var_name(int v) const { return names[static_cast<std::size_t>(v)]; }

    // Clause set with duplicates removed, for set-level comparisons.
    std::set<std::vector<int>> clause_set() const;

  private:
    mutable std::unordered_map<std::string, int> index_;
    mutable std::size_t indexed_upto_ = 0;
};

// True iff the two formulas have the same clause sets when literals are
// identified by variable NAME (index layout may differ).
bool same_clause_sets_by_name(const CnfFormula& a, const CnfFormula& b);

void write_dimacs(const CnfFormula& f, std::ostream& out);
// One line per variable: "<index>\t<name>".
void write_symbol_map(const CnfFormula& f, std::ostream& out);

CnfFormula read_dimacs(std::istream& in);
// Attaches names from a symbol-map stream to an already-read formula.
void read_symbol_map(CnfFormula& f, std::istream& in);

} // namespace asymlab

#endif
