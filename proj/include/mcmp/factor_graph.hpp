#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mcmp/instance.hpp"

namespace mcmp {

// The five feasible multicuts of a triangle, in canonical order. Coordinates
// are (x_uv, x_uw, x_vw) for sorted triangle nodes u < v < w.
constexpr std::array<std::array<std::uint8_t, 3>, 5> triangle_states() {
    return {{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
}

// Canonical state index of a 3-bit edge pattern, or -1 if it violates a
// triangle cycle inequality.
constexpr int triangle_state_index(int x_uv, int x_uw, int x_vw) {
    constexpr int table[8] = {0, -1, -1, 1, -1, 2, 3, 4}; // indexed by x_uv*4+x_uw*2+x_vw
    return table[x_uv * 4 + x_uw * 2 + x_vw];
}

// Partial assignment of factor edge variables, by instance edge index.
struct EdgeAssignment {
    std::size_t edge;
    std::uint8_t label;
};

struct EdgeFactor {
    std::size_t edge = 0;   // own instance edge index
    double cost = 0.0;      // reparameterized cost of the cut label; label 0 costs 0
    std::vector<std::size_t> triangles; // coupled triangle factors, in attach order
};

struct TriangleFactor {
    std::array<std::size_t, 3> nodes;    // u < v < w
    std::array<std::size_t, 3> edge_ids; // uv, uw, vw (coordinate order)
    std::array<double, 5> costs{};       // indexed like triangle_states()
    std::vector<std::size_t> couplings;  // indices into FactorGraph couplings, attach order
};

// Triangle plus one pendant spoke edge; 10 states = 5 triangle states x 2.
struct LollipopFactor {
    std::array<std::size_t, 3> tri_nodes; // sorted nodes of the triangle part
    std::size_t spoke_edge = 0;
    std::array<std::size_t, 4> edge_ids;  // triangle uv, uw, vw, then the spoke
    std::array<double, 10> costs{};       // index = 2 * triangle_state + spoke_label
    std::vector<std::size_t> couplings;   // indices into FactorGraph couplings
};

// A triangle<->lollipop dependency over their shared edges. For each factor
// state the restriction to the shared edges is precomputed as a bitmask over
// the shared-edge list (a one-hot marginalization map in both directions).
struct TriangleLollipopCoupling {
    std::size_t triangle = 0;
    std::size_t lollipop = 0;
    std::uint8_t shared_count = 0;         // 1..3 shared edges
    std::array<std::uint8_t, 5> tri_mask{};
    std::array<std::uint8_t, 10> lol_mask{};
};

// The decomposition of a multicut instance into edge, triangle and lollipop
// subproblems with their dependencies, plus the current reparameterized costs.
// New subproblems start with all-zero cost tables; chords required by a
// triangle are appended to the instance with cost zero, so the total cost of
// every feasible multicut is preserved by construction.
class FactorGraph {
public:
    explicit FactorGraph(const MulticutInstance& instance);

    const MulticutInstance& instance() const { return instance_; }
    std::span<const double> original_costs() const { return original_costs_; }

    std::vector<EdgeFactor>& edge_factors() { return edge_factors_; }
    const std::vector<EdgeFactor>& edge_factors() const { return edge_factors_; }
    std::vector<TriangleFactor>& triangle_factors() { return triangle_factors_; }
    const std::vector<TriangleFactor>& triangle_factors() const { return triangle_factors_; }
    std::vector<LollipopFactor>& lollipop_factors() { return lollipop_factors_; }
    const std::vector<LollipopFactor>& lollipop_factors() const { return lollipop_factors_; }
    std::vector<TriangleLollipopCoupling>& couplings() { return couplings_; }
    const std::vector<TriangleLollipopCoupling>& couplings() const { return couplings_; }

    // Creates the triangle subproblem on {a,b,c}, appending missing edges with
    // cost zero. Idempotent: re-attaching returns the existing id.
    std::size_t attach_triangle(std::size_t a, std::size_t b, std::size_t c);

    // Creates the lollipop subproblem for triangle {center,a,b} plus spoke
    // edge (center, spoke_target). Ensures the triangle factor and the spoke
    // edge exist, then couples the lollipop to every triangle factor sharing
    // at least one edge with it. Idempotent.
    std::size_t attach_lollipop(std::size_t center, std::size_t a, std::size_t b,
                                std::size_t spoke_target);

    std::optional<std::size_t> find_triangle(std::size_t a, std::size_t b, std::size_t c) const;

    // Sum over all factors of their minimal state cost, min(0, theta_e) for edges.
    double dual_lower_bound() const;

    // Total reparameterized cost of a feasible multicut labeling over the
    // current (possibly extended) edge set.
    double reparameterized_cost(const EdgeLabeling& labeling) const;

    // Drift diagnostic: largest magnitude in any factor cost table. Tables
    // are never normalized, so this can grow over long runs.
    double max_absolute_table_cost() const;

private:
    std::size_t ensure_edge(std::size_t u, std::size_t v);
    void add_coupling(std::size_t triangle_id, std::size_t lollipop_id);

    MulticutInstance instance_;
    std::vector<double> original_costs_;
    std::vector<EdgeFactor> edge_factors_;
    std::vector<TriangleFactor> triangle_factors_;
    std::vector<LollipopFactor> lollipop_factors_;
    std::vector<TriangleLollipopCoupling> couplings_;
    std::map<std::array<std::size_t, 3>, std::size_t> triangle_index_;
    std::map<std::pair<std::array<std::size_t, 3>, std::size_t>, std::size_t> lollipop_index_;
};

// Minimum factor cost over all states consistent with a partial assignment of
// the factor's edges; +inf if none is. Unknown edge variables are rejected.
double marginal_min(const EdgeFactor& factor, std::span<const EdgeAssignment> fixed);
double marginal_min(const TriangleFactor& factor, std::span<const EdgeAssignment> fixed);
double marginal_min(const LollipopFactor& factor, std::span<const EdgeAssignment> fixed);

// Value of a lollipop state coordinate: positions 0..2 are the triangle
// coordinates, position 3 the spoke label.
constexpr int lollipop_state_value(std::size_t state, std::size_t position) {
    const auto tri = triangle_states()[state / 2];
    return position < 3 ? tri[position] : static_cast<int>(state % 2);
}

} // namespace mcmp
