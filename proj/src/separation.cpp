#include "mcmp/separation.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <stdexcept>

#include "mcmp/disjoint_set.hpp"

namespace mcmp {

namespace {

// Shortest path by breadth first search; neighbors are visited in sorted
// order, so the returned path is deterministic. Returns the node sequence
// from source to target, empty if unreachable.
std::vector<std::size_t> bfs_path(const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t source, std::size_t target) {
    constexpr std::size_t unseen = SIZE_MAX;
    std::vector<std::size_t> parent(adj.size(), unseen);
    std::queue<std::size_t> frontier;
    parent[source] = source;
    frontier.push(source);
    while (!frontier.empty() && parent[target] == unseen) {
        std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t w : adj[v]) {
            if (parent[w] != unseen)
                continue;
            parent[w] = v;
            frontier.push(w);
        }
    }
    if (parent[target] == unseen)
        return {};
    std::vector<std::size_t> path{target};
    while (path.back() != source)
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::vector<ViolatedCycle> separate_cycles(const FactorGraph& graph, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("cycle separation requires epsilon > 0");
    const auto& instance = graph.instance();
    const auto& edges = graph.edge_factors();

    DisjointSet connectivity(instance.node_count());
    std::vector<std::vector<std::size_t>> positive_adj(instance.node_count());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].cost >= epsilon) {
            connectivity.join(instance.edge(e).u, instance.edge(e).v);
            positive_adj[instance.edge(e).u].push_back(instance.edge(e).v);
            positive_adj[instance.edge(e).v].push_back(instance.edge(e).u);
        }
    }
    for (auto& a : positive_adj)
        std::sort(a.begin(), a.end());

    std::vector<ViolatedCycle> cycles;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!(edges[e].cost <= -epsilon))
            continue;
        std::size_t u = instance.edge(e).u;
        std::size_t v = instance.edge(e).v;
        if (!connectivity.connected(u, v))
            continue;
        ViolatedCycle cycle;
        cycle.nodes = bfs_path(positive_adj, u, v);
        assert(cycle.nodes.size() >= 3);
        cycle.repair_edge = e;
        cycle.guaranteed_increase = -edges[e].cost;
        for (std::size_t i = 0; i + 1 < cycle.nodes.size(); ++i) {
            std::size_t path_edge = *instance.find_edge(cycle.nodes[i], cycle.nodes[i + 1]);
            cycle.guaranteed_increase = std::min(cycle.guaranteed_increase, edges[path_edge].cost);
        }
        cycles.push_back(std::move(cycle));
    }
    std::stable_sort(cycles.begin(), cycles.end(), [](const ViolatedCycle& a, const ViolatedCycle& b) {
        return a.guaranteed_increase > b.guaranteed_increase;
    });
    return cycles;
}

std::vector<std::size_t> triangulate_cycle(FactorGraph& graph, std::span<const std::size_t> nodes) {
    assert(nodes.size() >= 3);
    std::vector<std::size_t> triangles;
    triangles.reserve(nodes.size() - 2);
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i)
        triangles.push_back(graph.attach_triangle(nodes[0], nodes[i], nodes[i + 1]));
    return triangles;
}

bool triangle_wheel_test(const FactorGraph& graph, std::size_t triangle_id, std::size_t center,
                         double epsilon) {
    const TriangleFactor& tri = graph.triangle_factors()[triangle_id];
    auto it = std::find(tri.nodes.begin(), tri.nodes.end(), center);
    assert(it != tri.nodes.end());
    std::size_t center_pos = static_cast<std::size_t>(it - tri.nodes.begin());
    // Coordinates of the two edges incident to the center within (uv,uw,vw).
    constexpr std::array<std::array<std::size_t, 2>, 3> spokes{{{0, 1}, {0, 2}, {1, 2}}};
    auto [s0, s1] = std::pair{spokes[center_pos][0], spokes[center_pos][1]};

    constexpr double infinity = std::numeric_limits<double>::infinity();
    double min_one_cut = infinity, min_other = infinity;
    for (std::size_t t = 0; t < 5; ++t) {
        int cut = triangle_states()[t][s0] + triangle_states()[t][s1];
        (cut == 1 ? min_one_cut : min_other) =
            std::min(cut == 1 ? min_one_cut : min_other, tri.costs[t]);
    }
    return min_one_cut + epsilon <= min_other;
}

namespace {

DoubledBipartiteGraph doubled_graph_from(const FactorGraph& graph, std::size_t center,
                                         double epsilon,
                                         std::span<const std::size_t> candidate_triangles) {
    DoubledBipartiteGraph doubled;
    std::vector<std::array<std::size_t, 2>> pairs;
    for (std::size_t t : candidate_triangles) {
        const auto& nodes = graph.triangle_factors()[t].nodes;
        if (!triangle_wheel_test(graph, t, center, epsilon))
            continue;
        std::array<std::size_t, 2> rim_pair;
        std::size_t k = 0;
        for (std::size_t node : nodes)
            if (node != center)
                rim_pair[k++] = node;
        pairs.push_back(rim_pair);
        doubled.rim.push_back(rim_pair[0]);
        doubled.rim.push_back(rim_pair[1]);
    }
    std::sort(doubled.rim.begin(), doubled.rim.end());
    doubled.rim.erase(std::unique(doubled.rim.begin(), doubled.rim.end()), doubled.rim.end());

    auto code = [&](std::size_t node, std::size_t copy) {
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(doubled.rim.begin(), doubled.rim.end(), node) - doubled.rim.begin());
        return 2 * idx + copy;
    };
    for (const auto& [a, b] : pairs) {
        doubled.arcs.push_back({code(a, 0), code(b, 1)});
        doubled.arcs.push_back({code(a, 1), code(b, 0)});
    }
    return doubled;
}

} // namespace

DoubledBipartiteGraph build_doubled_graph(const FactorGraph& graph, std::size_t center,
                                          double epsilon) {
    std::vector<std::size_t> candidates;
    for (std::size_t t = 0; t < graph.triangle_factors().size(); ++t) {
        const auto& nodes = graph.triangle_factors()[t].nodes;
        if (std::find(nodes.begin(), nodes.end(), center) != nodes.end())
            candidates.push_back(t);
    }
    return doubled_graph_from(graph, center, epsilon, candidates);
}

std::vector<ViolatedOddWheel> separate_odd_wheels(const FactorGraph& graph, double epsilon) {
    std::vector<std::vector<std::size_t>> triangles_of(graph.instance().node_count());
    for (std::size_t t = 0; t < graph.triangle_factors().size(); ++t)
        for (std::size_t node : graph.triangle_factors()[t].nodes)
            triangles_of[node].push_back(t);

    std::vector<ViolatedOddWheel> wheels;
    for (std::size_t center = 0; center < graph.instance().node_count(); ++center) {
        DoubledBipartiteGraph doubled =
            doubled_graph_from(graph, center, epsilon, triangles_of[center]);
        if (doubled.arcs.empty())
            continue;

        std::vector<std::vector<std::size_t>> adj(doubled.node_count());
        DisjointSet connectivity(doubled.node_count());
        for (const auto& [a, b] : doubled.arcs) {
            adj[a].push_back(b);
            adj[b].push_back(a);
            connectivity.join(a, b);
        }
        for (auto& a : adj)
            std::sort(a.begin(), a.end());

        for (std::size_t i = 0; i < doubled.rim.size(); ++i) {
            if (!connectivity.connected(2 * i, 2 * i + 1))
                continue;
            std::vector<std::size_t> path = bfs_path(adj, 2 * i, 2 * i + 1);
            assert(path.size() >= 4 && path.size() % 2 == 0); // odd edge count
            std::vector<std::size_t> rim;
            rim.reserve(path.size() - 1);
            for (std::size_t j = 0; j + 1 < path.size(); ++j)
                rim.push_back(doubled.rim[path[j] / 2]);
            std::vector<std::size_t> sorted = rim;
            std::sort(sorted.begin(), sorted.end());
            bool simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
            if (!simple)
                continue;
            wheels.push_back({center, std::move(rim)});
            break; // at most one wheel per center per round
        }
    }
    return wheels;
}

OddWheelAttachment attach_odd_wheel(FactorGraph& graph, const ViolatedOddWheel& wheel) {
    assert(wheel.rim.size() >= 3 && wheel.rim.size() % 2 == 1);
    OddWheelAttachment attachment;
    for (std::size_t j = 1; j < wheel.rim.size(); ++j)
        attachment.triangles.push_back(
            graph.attach_triangle(wheel.center, wheel.rim[0], wheel.rim[j]));
    for (std::size_t j = 1; j + 1 < wheel.rim.size(); ++j)
        attachment.lollipops.push_back(
            graph.attach_lollipop(wheel.center, wheel.rim[j], wheel.rim[j + 1], wheel.rim[0]));
    return attachment;
}

} // namespace mcmp
