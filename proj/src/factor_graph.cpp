#include "mcmp/factor_graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcmp {

FactorGraph::FactorGraph(const MulticutInstance& instance) : instance_(instance) {
    original_costs_.reserve(instance_.edge_count());
    edge_factors_.reserve(instance_.edge_count());
    for (std::size_t e = 0; e < instance_.edge_count(); ++e) {
        original_costs_.push_back(instance_.edge(e).cost);
        edge_factors_.push_back({e, instance_.edge(e).cost, {}});
    }
}

std::size_t FactorGraph::ensure_edge(std::size_t u, std::size_t v) {
    if (auto e = instance_.find_edge(u, v))
        return *e;
    std::size_t e = instance_.add_edge(u, v, 0.0);
    original_costs_.push_back(0.0);
    edge_factors_.push_back({e, 0.0, {}});
    return e;
}

std::size_t FactorGraph::attach_triangle(std::size_t a, std::size_t b, std::size_t c) {
    std::array<std::size_t, 3> nodes{a, b, c};
    std::sort(nodes.begin(), nodes.end());
    if (nodes[0] == nodes[1] || nodes[1] == nodes[2])
        throw std::invalid_argument("triangle nodes must be distinct");
    if (auto it = triangle_index_.find(nodes); it != triangle_index_.end())
        return it->second;

    TriangleFactor factor;
    factor.nodes = nodes;
    factor.edge_ids = {ensure_edge(nodes[0], nodes[1]), ensure_edge(nodes[0], nodes[2]),
                       ensure_edge(nodes[1], nodes[2])};
    std::size_t id = triangle_factors_.size();
    triangle_factors_.push_back(std::move(factor));
    triangle_index_.emplace(nodes, id);
    for (std::size_t e : triangle_factors_[id].edge_ids)
        edge_factors_[e].triangles.push_back(id);
    return id;
}

std::optional<std::size_t> FactorGraph::find_triangle(std::size_t a, std::size_t b,
                                                      std::size_t c) const {
    std::array<std::size_t, 3> nodes{a, b, c};
    std::sort(nodes.begin(), nodes.end());
    if (auto it = triangle_index_.find(nodes); it != triangle_index_.end())
        return it->second;
    return std::nullopt;
}

void FactorGraph::add_coupling(std::size_t triangle_id, std::size_t lollipop_id) {
    const TriangleFactor& tri = triangle_factors_[triangle_id];
    const LollipopFactor& lol = lollipop_factors_[lollipop_id];

    std::vector<std::size_t> shared;
    for (std::size_t e : tri.edge_ids)
        if (std::find(lol.edge_ids.begin(), lol.edge_ids.end(), e) != lol.edge_ids.end())
            shared.push_back(e);
    assert(!shared.empty());
    std::sort(shared.begin(), shared.end());

    TriangleLollipopCoupling coupling;
    coupling.triangle = triangle_id;
    coupling.lollipop = lollipop_id;
    coupling.shared_count = static_cast<std::uint8_t>(shared.size());
    for (std::size_t t = 0; t < 5; ++t) {
        std::uint8_t mask = 0;
        for (std::size_t j = 0; j < shared.size(); ++j) {
            std::size_t pos = static_cast<std::size_t>(
                std::find(tri.edge_ids.begin(), tri.edge_ids.end(), shared[j]) -
                tri.edge_ids.begin());
            mask |= static_cast<std::uint8_t>(triangle_states()[t][pos] << j);
        }
        coupling.tri_mask[t] = mask;
    }
    for (std::size_t s = 0; s < 10; ++s) {
        std::uint8_t mask = 0;
        for (std::size_t j = 0; j < shared.size(); ++j) {
            std::size_t pos = static_cast<std::size_t>(
                std::find(lol.edge_ids.begin(), lol.edge_ids.end(), shared[j]) -
                lol.edge_ids.begin());
            mask |= static_cast<std::uint8_t>(lollipop_state_value(s, pos) << j);
        }
        coupling.lol_mask[s] = mask;
    }

    std::size_t coupling_id = couplings_.size();
    couplings_.push_back(coupling);
    triangle_factors_[triangle_id].couplings.push_back(coupling_id);
    lollipop_factors_[lollipop_id].couplings.push_back(coupling_id);
}

std::size_t FactorGraph::attach_lollipop(std::size_t center, std::size_t a, std::size_t b,
                                         std::size_t spoke_target) {
    if (spoke_target == center || spoke_target == a || spoke_target == b)
        throw std::invalid_argument("lollipop spoke target overlaps its triangle");

    std::size_t triangle_id = attach_triangle(center, a, b);
    std::size_t spoke = ensure_edge(center, spoke_target);

    const TriangleFactor& tri = triangle_factors_[triangle_id];
    auto key = std::make_pair(tri.nodes, spoke);
    if (auto it = lollipop_index_.find(key); it != lollipop_index_.end())
        return it->second;

    LollipopFactor factor;
    factor.tri_nodes = tri.nodes;
    factor.spoke_edge = spoke;
    factor.edge_ids = {tri.edge_ids[0], tri.edge_ids[1], tri.edge_ids[2], spoke};
    std::size_t id = lollipop_factors_.size();
    lollipop_factors_.push_back(std::move(factor));
    lollipop_index_.emplace(key, id);

    // Couple to every existing triangle factor sharing at least one edge.
    std::vector<std::size_t> partners;
    for (std::size_t e : lollipop_factors_[id].edge_ids)
        for (std::size_t t : edge_factors_[e].triangles)
            partners.push_back(t);
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (std::size_t t : partners)
        add_coupling(t, id);
    return id;
}

double FactorGraph::dual_lower_bound() const {
    double total = 0.0;
    for (const auto& f : edge_factors_)
        total += std::min(0.0, f.cost);
    for (const auto& f : triangle_factors_)
        total += *std::min_element(f.costs.begin(), f.costs.end());
    for (const auto& f : lollipop_factors_)
        total += *std::min_element(f.costs.begin(), f.costs.end());
    return total;
}

double FactorGraph::reparameterized_cost(const EdgeLabeling& labeling) const {
    if (labeling.size() != instance_.edge_count())
        throw std::invalid_argument("labeling length does not match edge count");
    double total = 0.0;
    for (const auto& f : edge_factors_)
        if (labeling[f.edge])
            total += f.cost;
    for (const auto& f : triangle_factors_) {
        int t = triangle_state_index(labeling[f.edge_ids[0]], labeling[f.edge_ids[1]],
                                     labeling[f.edge_ids[2]]);
        if (t < 0)
            throw std::invalid_argument("labeling is not a feasible multicut on a triangle factor");
        total += f.costs[static_cast<std::size_t>(t)];
    }
    for (const auto& f : lollipop_factors_) {
        int t = triangle_state_index(labeling[f.edge_ids[0]], labeling[f.edge_ids[1]],
                                     labeling[f.edge_ids[2]]);
        if (t < 0)
            throw std::invalid_argument("labeling is not a feasible multicut on a lollipop factor");
        total += f.costs[static_cast<std::size_t>(2 * t + labeling[f.spoke_edge])];
    }
    return total;
}

double FactorGraph::max_absolute_table_cost() const {
    double largest = 0.0;
    for (const auto& f : edge_factors_)
        largest = std::max(largest, std::abs(f.cost));
    for (const auto& f : triangle_factors_)
        for (double c : f.costs)
            largest = std::max(largest, std::abs(c));
    for (const auto& f : lollipop_factors_)
        for (double c : f.costs)
            largest = std::max(largest, std::abs(c));
    return largest;
}

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// Resolves a partial assignment to positions within the factor's edge list.
template <std::size_t N>
std::array<int, N> resolve_fixed(const std::array<std::size_t, N>& edge_ids,
                                 std::span<const EdgeAssignment> fixed) {
    std::array<int, N> want;
    want.fill(-1);
    for (const auto& assignment : fixed) {
        auto it = std::find(edge_ids.begin(), edge_ids.end(), assignment.edge);
        if (it == edge_ids.end())
            throw std::invalid_argument("fixed assignment names an edge not in the factor");
        want[static_cast<std::size_t>(it - edge_ids.begin())] = assignment.label ? 1 : 0;
    }
    return want;
}

} // namespace

double marginal_min(const EdgeFactor& factor, std::span<const EdgeAssignment> fixed) {
    int want = -1;
    for (const auto& assignment : fixed) {
        if (assignment.edge != factor.edge)
            throw std::invalid_argument("fixed assignment names an edge not in the factor");
        want = assignment.label ? 1 : 0;
    }
    if (want == 0)
        return 0.0;
    if (want == 1)
        return factor.cost;
    return std::min(0.0, factor.cost);
}

double marginal_min(const TriangleFactor& factor, std::span<const EdgeAssignment> fixed) {
    auto want = resolve_fixed(factor.edge_ids, fixed);
    double best = infinity;
    for (std::size_t t = 0; t < 5; ++t) {
        bool ok = true;
        for (std::size_t pos = 0; pos < 3; ++pos)
            if (want[pos] >= 0 && triangle_states()[t][pos] != want[pos])
                ok = false;
        if (ok)
            best = std::min(best, factor.costs[t]);
    }
    return best;
}

double marginal_min(const LollipopFactor& factor, std::span<const EdgeAssignment> fixed) {
    auto want = resolve_fixed(factor.edge_ids, fixed);
    double best = infinity;
    for (std::size_t s = 0; s < 10; ++s) {
        bool ok = true;
        for (std::size_t pos = 0; pos < 4; ++pos)
            if (want[pos] >= 0 && lollipop_state_value(s, pos) != want[pos])
                ok = false;
        if (ok)
            best = std::min(best, factor.costs[s]);
    }
    return best;
}

} // namespace mcmp
