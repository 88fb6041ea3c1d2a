#ifndef ASYMLAB_PIGEONHOLE_HPP
#define ASYMLAB_PIGEONHOLE_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/common.hpp"

#include <cstdint>

namespace asymlab {

// Variable naming: assignment variables are "<pigeon>_<hole>", prefix
// variables are "p<pigeon>_<hole>". Layout is pigeons-major, holes-minor,
// with the prefix block after the assignment block.

// Pigeons 1..n, holes 1..n-1: one hole per pigeon plus pairwise exclusions.
CnfFormula php(int n);
// php plus at-most-one-hole-per-pigeon clauses.
CnfFormula fphp(int n);
// php plus at-least-one-pigeon-per-hole clauses.
CnfFormula ophp(int n);
CnfFormula ofphp(int n);

// Temporal variant: holes act as time steps; prefix variables px_y say the
// pigeon was placed before step y.
CnfFormula tphp(int n);
CnfFormula otphp(int n);
// tphp plus occupancy clauses {-x_(y+1), 1_y, ..., n_y}.
CnfFormula map_tphp(int n);

struct SphParams {
    int n;                      // holes; pigeons are 0..n
    int k;                      // bad pigeon needs k holes; 1 <= k <= n
    long clause_cap = 1000000;  // guard for the naive GEQ expansion
};

// Structured pigeon hole: bad pigeon 0 needs k holes (naive GEQ encoding),
// good pigeons 1..k-1 may share holes with it, normal pigeons k..n may not.
CnfFormula sph(const SphParams& p);

// The naive GEQ clause family over the given variables: one clause per
// subset of size vars.size()-k+1.
std::vector<std::vector<int>> naive_geq(const std::vector<int>& vars, int k, long clause_cap);

} // namespace asymlab

#endif
