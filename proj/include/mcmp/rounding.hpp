#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mcmp/factor_graph.hpp"
#include "mcmp/instance.hpp"

namespace mcmp {

// Greedy additive edge contraction: repeatedly merges the cluster pair of
// maximum positive inter-cluster weight (sum of edge costs between them),
// ties broken by the lexicographically smallest representative pair. If given,
// merge_log receives the representative pairs in contraction order.
Partition gaec(const MulticutInstance& instance, std::span<const double> costs,
               std::vector<std::pair<std::size_t, std::size_t>>* merge_log = nullptr);

// Kernighan-Lin local search with joins: node exchanges between adjacent
// components with best-prefix selection, spawning new components from
// boundary nodes, and joining adjacent components, until a full pass brings
// no strict improvement (at most 25 passes). Never returns a worse partition
// than the initial one.
Partition klj(const MulticutInstance& instance, std::span<const double> costs,
              const Partition& initial);

struct RoundedSolution {
    EdgeLabeling labeling; // over the graph's current (possibly extended) edges
    Partition partition;
    double cost = 0.0; // under the original costs
};

// Runs gaec+klj on the original costs and on the current reparameterized edge
// costs (after a fresh edge_receive sweep), evaluates both under the original
// costs and returns the better solution.
RoundedSolution round_solution(FactorGraph& graph);

} // namespace mcmp
