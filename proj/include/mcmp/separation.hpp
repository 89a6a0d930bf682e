#pragma once

#include <array>
#include <span>
#include <vector>

#include "mcmp/factor_graph.hpp"

namespace mcmp {

// A cycle whose triangulation provably raises the dual lower bound: the
// repair edge (closing nodes.back() to nodes.front()) has cost <= -epsilon,
// all path edges have cost >= epsilon.
struct ViolatedCycle {
    std::vector<std::size_t> nodes;
    std::size_t repair_edge = 0;
    double guaranteed_increase = 0.0;
};

struct ViolatedOddWheel {
    std::size_t center = 0;
    std::vector<std::size_t> rim; // odd length >= 3, a simple cycle in the graph
};

// Two copies of every rim node around a center; each qualifying triangle
// {center,a,b} contributes the cross pair a-b' and a'-b. A path between the
// copies of one rim node has odd length and maps back to an odd rim cycle.
struct DoubledBipartiteGraph {
    std::vector<std::size_t> rim;                 // sorted distinct rim nodes
    std::vector<std::array<std::size_t, 2>> arcs; // doubled-vertex codes 2*rim_index+copy

    std::size_t node_count() const { return 2 * rim.size(); }
    std::size_t edge_count() const { return arcs.size(); }
};

// Finds cycles satisfying the hypothesis above on the current reparameterized
// edge costs, shortest first per repair edge (breadth first search through
// edges of cost >= epsilon), sorted by guaranteed increase descending.
std::vector<ViolatedCycle> separate_cycles(const FactorGraph& graph, double epsilon);

// Fan triangulation from the first cycle node; k-2 triangles, chords appended
// with cost zero as needed. Returns the triangle ids.
std::vector<std::size_t> triangulate_cycle(FactorGraph& graph, std::span<const std::size_t> nodes);

inline std::vector<std::size_t> triangulate_cycle(FactorGraph& graph, const ViolatedCycle& cycle) {
    return triangulate_cycle(graph, cycle.nodes);
}

// True iff cutting exactly one of the triangle's two edges incident to the
// center is cheaper by epsilon than cutting zero or both of them.
bool triangle_wheel_test(const FactorGraph& graph, std::size_t triangle_id, std::size_t center,
                         double epsilon);

DoubledBipartiteGraph build_doubled_graph(const FactorGraph& graph, std::size_t center,
                                          double epsilon);

// One wheel per center at most: the first simple odd rim cycle found through
// the doubled graph of that center's qualifying triangles.
std::vector<ViolatedOddWheel> separate_odd_wheels(const FactorGraph& graph, double epsilon);

struct OddWheelAttachment {
    std::vector<std::size_t> triangles; // k-1 triangles fanning from the first rim node
    std::vector<std::size_t> lollipops; // k-2 lollipops, one per inner rim edge
};

OddWheelAttachment attach_odd_wheel(FactorGraph& graph, const ViolatedOddWheel& wheel);

} // namespace mcmp
