#include "asymlab/cnf.hpp"

#include "asymlab/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace asymlab {

int CnfFormula::add_variable(std::string name) {
    names.push_back(std::move(name));
    return ++nvars;
}

void CnfFormula::add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    clauses.push_back(std::move(lits));
}

int CnfFormula::var_by_name(std::string_view name) const {
    if (indexed_upto_ != names.size()) {
        index_.clear();
        for (std::size_t i = 1; i < names.size(); ++i)
            index_.emplace(names[i], static_cast<int>(i));
        indexed_upto_ = names.size();
    }
    auto it = index_.find(std::string(name));
    return it == index_.end() ? 0 : it->second;
}

std::set<std::vector<int>> CnfFormula::clause_set() const {
    return {clauses.begin(), clauses.end()};
}

bool same_clause_sets_by_name(const CnfFormula& a, const CnfFormula& b) {
    auto named = [](const CnfFormula& f) {
        std::set<std::set<std::pair<std::string, bool>>> out;
        for (const auto& c : f.clauses) {
            std::set<std::pair<std::string, bool>> nc;
            for (int lit : c)
                nc.emplace(f.var_name(std::abs(lit)), lit > 0);
            out.insert(std::move(nc));
        }
        return out;
    };
    return named(a) == named(b);
}

void write_dimacs(const CnfFormula& f, std::ostream& out) {
    out << "p cnf " << f.nvars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c)
            out << lit << ' ';
        out << "0\n";
    }
}

void write_symbol_map(const CnfFormula& f, std::ostream& out) {
    for (int v = 1; v <= f.nvars; ++v)
        out << v << '\t' << f.var_name(v) << '\n';
}

CnfFormula read_dimacs(std::istream& in) {
    CnfFormula f;
    std::string line;
    long declared_clauses = -1;
    std::vector<int> cur;
    bool in_clause = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        if (line[0] == 'p') {
            std::istringstream hdr(line);
            std::string p, cnf;
            hdr >> p >> cnf >> f.nvars >> declared_clauses;
            if (cnf != "cnf")
                throw ParseError("not a DIMACS cnf header: " + line);
            f.names.assign(static_cast<std::size_t>(f.nvars) + 1, std::string());
            for (int v = 1; v <= f.nvars; ++v)
                f.names[static_cast<std::size_t>(v)] = "v" + std::to_string(v);
            continue;
        }
        std::istringstream body(line);
        int lit;
        while (body >> lit) {
            if (lit == 0) {
                f.add_clause(cur);
                cur.clear();
                in_clause = false;
            } else {
                if (std::abs(lit) > f.nvars)
                    throw ParseError("literal out of range: " + std::to_string(lit));
                cur.push_back(lit);
                in_clause = true;
            }
        }
    }
    if (in_clause)
        throw ParseError("unterminated clause at end of DIMACS input");
    return f;
}

void read_symbol_map(CnfFormula& f, std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("symbol map line without tab: " + line);
        int v = std::atoi(line.substr(0, tab).c_str());
        if (v < 1 || v > f.nvars)
            throw ParseError("symbol map index out of range: " + line);
        f.names[static_cast<std::size_t>(v)] = line.substr(tab + 1);
    }
}

} // namespace asymlab
