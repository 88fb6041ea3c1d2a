#ifndef ASYMLAB_ANALYSIS_HPP
#define ASYMLAB_ANALYSIS_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asymlab {

// Co-occurrence graph: nodes are variables, an edge joins two variables that
// share at least one clause in any polarity.
struct ConstraintGraph {
    int nvars = 0;
    std::vector<std::vector<int>> adj; // sorted neighbor lists, 1-based

    bool has_edge(int a, int b) const;
    std::size_t edge_count() const;
};

ConstraintGraph constraint_graph(const CnfFormula& f);

bool is_clique(const ConstraintGraph& g, const std::vector<int>& vars);

struct ClqueVerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CutsetFamily : std::uint8_t { Map, Sbw, Sph };

struct CutsetWitness {
    int timestep; // 0 for SPH hole cliques (hole index stored instead)
    std::vector<int> vars;
    std::vector<std::string> names;
};

struct CutsetBoundReport {
    std::string family;
    int n = 0, k = 0;
    std::vector<CutsetWitness> cliques;
    long bound = 0; // sum of (|clique| - 2)
};

// Builds the family's encoding, constructs the disjoint witness cliques,
// verifies each against the actual constraint graph (throwing
// ClqueVerificationError on any failure), and sums the cycle-cutset lower
// bound. The sums equal the closed forms: MAP 6n^2-13n+7; SBW n^3-2n^2-2n+4
// (k=0) and n^2/2+n/2-6 (k=n-2); SPH n^2-2n.
CutsetBoundReport cutset_lower_bound(CutsetFamily family, int n, int k);

struct BatchRow {
    std::string family; // "map" | "sbw" | "redherring"
    int n = 0, k = 0;
};

struct ReportOptions {
    long dpll_node_budget = 2'000'000;
    std::size_t state_cap = 10'000'000;
};

// CSV with one row per instance: optimal length m, AsymRatio, DPLL statistics
// on the b=m-1 encoding, and backdoor-guided node counts where a published
// backdoor applies. Row order is fixed (n, then k); solver-cap rows carry an
// error column instead of numbers.
std::string report_batch(const std::vector<BatchRow>& rows, const ReportOptions& opts = {});

} // namespace asymlab

#endif
