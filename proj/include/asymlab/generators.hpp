#ifndef ASYMLAB_GENERATORS_HPP
#define ASYMLAB_GENERATORS_HPP

#include "asymlab/planning.hpp"

namespace asymlab {

struct MapParams {
    int n;
    int k; // odd, 1 <= k <= 2n-1
};

struct SbwParams {
    int n;
    int k; // 0 <= k <= n
};

struct RedHerringParams {
    int n;
    int k; // 1 <= k <= 2n-2
};

// Star-with-tail roadmap: hub L0, branches 1..n of depth 1, branch 1 extended
// to depth 2n-3 (to depth k when k = 2n-1 so the goal fact exists). Goal:
// visited-L1^k plus the lowest-indexed (n-1)-(k-1)/2 other branch tips.
PlanningTask map_task(const MapParams& p);

// Block stacking onto the one-block table t2: k bad blocks b1..bk stack only
// in sequence, good blocks g1..g_{n-k} stack freely (t2 counts as the lowest
// good block). Goal: every block above t2.
PlanningTask sbw_task(const SbwParams& p);

// Two disjoint MAP roadmaps (L... and R...); goal visited-L1^k plus all
// right-map branch tips. Actions carry component groups and the task allows
// parallel cross-map moves.
PlanningTask red_herring_task(const RedHerringParams& p);

// Node name helpers shared with tests and backdoor construction.
std::string map_node(int branch, int depth);            // "L0", "L3^1", "L1^4"
std::string map_move(const std::string& from, const std::string& to);

} // namespace asymlab

#endif
