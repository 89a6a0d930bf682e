#pragma once

#include <cstdint>
#include <vector>

#include "mcmp/factor_graph.hpp"

namespace mcmp {

// Total order over edge and triangle subproblems. Edges are ordered
// lexicographically by (u,v); a triangle sits strictly between its smallest
// and largest edge. Lollipops are not visited directly: their messages flow
// through the triangles they couple to.
struct FactorOrder {
    enum class Kind : std::uint8_t { edge, triangle };
    struct Entry {
        Kind kind;
        std::size_t id;
    };
    std::vector<Entry> entries;
};

// Deterministic order satisfying the constraints above; recompute after
// attaching new subproblems.
FactorOrder compute_factor_order(const FactorGraph& graph);

// Pulls messages from every coupled triangle onto the edge. Afterwards each
// such triangle has equal conditional minima for both labels of this edge.
void edge_receive(FactorGraph& graph, std::size_t edge_id);

// Distributes the edge cost uniformly onto its coupled triangles and zeroes
// it; no-op for uncoupled edges.
void edge_send(FactorGraph& graph, std::size_t edge_id);

// Pulls messages from every coupled lollipop onto the triangle. Afterwards
// each such lollipop has zero conditional minima over every shared-edge
// assignment.
void triangle_receive(FactorGraph& graph, std::size_t triangle_id);

// Distributes the triangle's min-marginals over shared edges uniformly onto
// its coupled lollipops; no-op for uncoupled triangles.
void triangle_send(FactorGraph& graph, std::size_t triangle_id);

// edge_receive over all edges in lexicographic order; concentrates the
// current cost mass onto the edge factors (used before separation/rounding).
void edge_receive_sweep(FactorGraph& graph);

// One forward pass (receive then send per factor) followed by one pass in
// reversed order. Returns the dual lower bound.
double run_iteration(FactorGraph& graph, const FactorOrder& order);

} // namespace mcmp
