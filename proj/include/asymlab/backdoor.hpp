#ifndef ASYMLAB_BACKDOOR_HPP
#define ASYMLAB_BACKDOOR_HPP

#include "asymlab/cnf.hpp"
#include "asymlab/common.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asymlab {

enum class BackdoorFamily : std::uint8_t { MapSym, MapAsym, SbwSym, SbwAsym, Sph };

std::optional<BackdoorFamily> backdoor_family_from_name(std::string_view name);
std::string backdoor_family_name(BackdoorFamily f);

// Variable names of the published backdoor set for the family at (n, k);
// planning families use "<action>@<t>" names, SPH uses "<pigeon>_<hole>".
// k is the family's structure parameter (1, 2n-3, 0, n-2 for the planning
// families). Throws InvalidParams outside the family's validity range.
std::vector<std::string> known_backdoor_names(BackdoorFamily family, int n, int k);

struct BackdoorSpec {
    std::vector<int> vars; // indices into the formula
};

// Resolves the family's names through the formula's symbol map.
BackdoorSpec known_backdoor(BackdoorFamily family, int n, int k, const CnfFormula& f);

struct VerificationReport {
    unsigned long long total = 0;     // 2^|B|
    unsigned long long conflicts = 0;
    unsigned long long consistent = 0;
    std::optional<std::vector<std::int8_t>> first_counterexample; // values per B position
    bool is_backdoor() const { return consistent == 0; }
};

struct VerifyOptions {
    int exhaustive_cap = 26; // max |B| for exhaustive enumeration
    int threads = 1;
    // Stop counting UP-consistent assignments beyond this many (0 = count
    // all). Existence-style queries use 1.
    unsigned long long consistent_limit = 0;
};

// Exhaustive check over all 2^|B| assignments, enumerated depth-first with
// incremental UP and conflicting-subtree pruning; pruned subtrees are counted
// as conflicts in bulk. Throws CapExceeded above the cap.
VerificationReport verify_backdoor(const CnfFormula& f, const std::vector<int>& B,
                                   const VerifyOptions& opts = {});

// Uniform random assignments; total = samples.
VerificationReport sample_backdoor(const CnfFormula& f, const std::vector<int>& B,
                                   unsigned long long samples, std::uint64_t seed,
                                   int threads = 1);

struct MinimalityRow {
    int removed_var;
    unsigned long long consistent; // possibly clamped to the row limit
    bool clamped = false;
};

// For each v in B: UP-consistent assignment count over B \ {v}. With
// per_removal_limit > 0 counting stops at the limit (existence mode).
std::vector<MinimalityRow> minimality_report(const CnfFormula& f, const std::vector<int>& B,
                                             unsigned long long per_removal_limit = 0,
                                             const VerifyOptions& opts = {});

struct SearchResult {
    std::optional<std::vector<int>> backdoor; // first (lexicographic) hit
    unsigned long long subsets_checked = 0;
    bool budget_exceeded = false;
};

// Enumerates variable subsets of size 0..max_size in lexicographic order and
// returns the first backdoor, or confirms none exists up to max_size.
// budget counts UP assumption pushes; 0 = unlimited.
SearchResult search_optimal(const CnfFormula& f, int max_size,
                            unsigned long long budget = 0);

} // namespace asymlab

#endif
