#include "mcmp/message_passing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <tuple>

#include "mcmp/errors.hpp"

namespace mcmp {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// Minimum lollipop cost per shared-edge assignment of one coupling.
std::array<double, 8> lollipop_marginals(const LollipopFactor& lol,
                                         const TriangleLollipopCoupling& c) {
    std::array<double, 8> delta;
    delta.fill(infinity);
    for (std::size_t s = 0; s < 10; ++s)
        delta[c.lol_mask[s]] = std::min(delta[c.lol_mask[s]], lol.costs[s]);
    return delta;
}

// Minimum triangle cost per shared-edge assignment of one coupling.
std::array<double, 8> triangle_marginals(const TriangleFactor& tri,
                                         const TriangleLollipopCoupling& c) {
    std::array<double, 8> delta;
    delta.fill(infinity);
    for (std::size_t t = 0; t < 5; ++t)
        delta[c.tri_mask[t]] = std::min(delta[c.tri_mask[t]], tri.costs[t]);
    return delta;
}

} // namespace

FactorOrder compute_factor_order(const FactorGraph& graph) {
    const auto& instance = graph.instance();

    // Lexicographic rank of each edge by its (u,v) pair.
    std::vector<std::size_t> by_lex(instance.edge_count());
    for (std::size_t e = 0; e < by_lex.size(); ++e)
        by_lex[e] = e;
    std::sort(by_lex.begin(), by_lex.end(), [&](std::size_t a, std::size_t b) {
        return std::make_pair(instance.edge(a).u, instance.edge(a).v) <
               std::make_pair(instance.edge(b).u, instance.edge(b).v);
    });
    std::vector<std::size_t> lex_rank(instance.edge_count());
    for (std::size_t r = 0; r < by_lex.size(); ++r)
        lex_rank[by_lex[r]] = r;

    // Sort key: (rank of smallest incident edge, kind with edge < triangle, nodes).
    struct Keyed {
        std::size_t rank;
        std::uint8_t kind;
        std::array<std::size_t, 3> nodes;
        FactorOrder::Entry entry;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(instance.edge_count() + graph.triangle_factors().size());
    for (std::size_t e = 0; e < instance.edge_count(); ++e)
        keyed.push_back({lex_rank[e],
                         0,
                         {instance.edge(e).u, instance.edge(e).v, 0},
                         {FactorOrder::Kind::edge, e}});
    for (std::size_t t = 0; t < graph.triangle_factors().size(); ++t) {
        const auto& tri = graph.triangle_factors()[t];
        // Edge (u,v) is the lexicographic minimum of the triangle's edges.
        keyed.push_back({lex_rank[tri.edge_ids[0]], 1, tri.nodes, {FactorOrder::Kind::triangle, t}});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.rank, a.kind, a.nodes) < std::tie(b.rank, b.kind, b.nodes);
    });

    FactorOrder order;
    order.entries.reserve(keyed.size());
    std::vector<std::size_t> position(instance.edge_count());
    for (const auto& k : keyed) {
        if (k.entry.kind == FactorOrder::Kind::edge)
            position[k.entry.id] = order.entries.size();
        order.entries.push_back(k.entry);
    }
    // The constraints e1 < C < e3 hold by construction; verify anyway.
    for (std::size_t i = 0; i < order.entries.size(); ++i) {
        if (order.entries[i].kind != FactorOrder::Kind::triangle)
            continue;
        const auto& tri = graph.triangle_factors()[order.entries[i].id];
        if (position[tri.edge_ids[0]] >= i || position[tri.edge_ids[2]] <= i)
            throw internal_error("factor order violates a triangle ordering constraint");
    }
    return order;
}

void edge_receive(FactorGraph& graph, std::size_t edge_id) {
    EdgeFactor& edge = graph.edge_factors()[edge_id];
    for (std::size_t t : edge.triangles) {
        TriangleFactor& tri = graph.triangle_factors()[t];
        std::size_t pos = static_cast<std::size_t>(
            std::find(tri.edge_ids.begin(), tri.edge_ids.end(), edge_id) - tri.edge_ids.begin());
        double min0 = infinity, min1 = infinity;
        for (std::size_t s = 0; s < 5; ++s)
            (triangle_states()[s][pos] ? min1 : min0) =
                std::min(triangle_states()[s][pos] ? min1 : min0, tri.costs[s]);
        double delta = min1 - min0;
        edge.cost += delta;
        for (std::size_t s = 0; s < 5; ++s)
            if (triangle_states()[s][pos])
                tri.costs[s] -= delta;
    }
}

void edge_send(FactorGraph& graph, std::size_t edge_id) {
    EdgeFactor& edge = graph.edge_factors()[edge_id];
    if (edge.triangles.empty())
        return;
    double delta = edge.cost / static_cast<double>(edge.triangles.size());
    edge.cost = 0.0;
    for (std::size_t t : edge.triangles) {
        TriangleFactor& tri = graph.triangle_factors()[t];
        std::size_t pos = static_cast<std::size_t>(
            std::find(tri.edge_ids.begin(), tri.edge_ids.end(), edge_id) - tri.edge_ids.begin());
        for (std::size_t s = 0; s < 5; ++s)
            if (triangle_states()[s][pos])
                tri.costs[s] += delta;
    }
}

void triangle_receive(FactorGraph& graph, std::size_t triangle_id) {
    TriangleFactor& tri = graph.triangle_factors()[triangle_id];
    for (std::size_t ci : tri.couplings) {
        const TriangleLollipopCoupling& c = graph.couplings()[ci];
        LollipopFactor& lol = graph.lollipop_factors()[c.lollipop];
        auto delta = lollipop_marginals(lol, c);
        for (std::size_t s = 0; s < 10; ++s)
            lol.costs[s] -= delta[c.lol_mask[s]];
        for (std::size_t t = 0; t < 5; ++t) {
            assert(std::isfinite(delta[c.tri_mask[t]]));
            tri.costs[t] += delta[c.tri_mask[t]];
        }
    }
}

void triangle_send(FactorGraph& graph, std::size_t triangle_id) {
    TriangleFactor& tri = graph.triangle_factors()[triangle_id];
    if (tri.couplings.empty())
        return;
    double alpha = static_cast<double>(tri.couplings.size());

    // All deltas are min-marginals of the same pre-update triangle costs; the
    // triangle is discounted only after every lollipop got its share.
    std::vector<std::array<double, 8>> deltas;
    deltas.reserve(tri.couplings.size());
    for (std::size_t ci : tri.couplings)
        deltas.push_back(triangle_marginals(tri, graph.couplings()[ci]));

    for (std::size_t k = 0; k < tri.couplings.size(); ++k) {
        const TriangleLollipopCoupling& c = graph.couplings()[tri.couplings[k]];
        LollipopFactor& lol = graph.lollipop_factors()[c.lollipop];
        for (std::size_t s = 0; s < 10; ++s) {
            assert(std::isfinite(deltas[k][c.lol_mask[s]]));
            lol.costs[s] += deltas[k][c.lol_mask[s]] / alpha;
        }
    }
    for (std::size_t k = 0; k < tri.couplings.size(); ++k) {
        const TriangleLollipopCoupling& c = graph.couplings()[tri.couplings[k]];
        for (std::size_t t = 0; t < 5; ++t)
            tri.costs[t] -= deltas[k][c.tri_mask[t]] / alpha;
    }
}

void edge_receive_sweep(FactorGraph& graph) {
    const auto& instance = graph.instance();
    std::vector<std::size_t> order(instance.edge_count());
    for (std::size_t e = 0; e < order.size(); ++e)
        order[e] = e;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::make_pair(instance.edge(a).u, instance.edge(a).v) <
               std::make_pair(instance.edge(b).u, instance.edge(b).v);
    });
    for (std::size_t e : order)
        edge_receive(graph, e);
}

double run_iteration(FactorGraph& graph, const FactorOrder& order) {
    auto visit = [&](const FactorOrder::Entry& entry) {
        if (entry.kind == FactorOrder::Kind::edge) {
            edge_receive(graph, entry.id);
            edge_send(graph, entry.id);
        } else {
            triangle_receive(graph, entry.id);
            triangle_send(graph, entry.id);
        }
    };
    for (const auto& entry : order.entries)
        visit(entry);
    for (auto it = order.entries.rbegin(); it != order.entries.rend(); ++it)
        visit(*it);
    return graph.dual_lower_bound();
}

} // namespace mcmp
