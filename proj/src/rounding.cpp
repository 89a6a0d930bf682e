#include "mcmp/rounding.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "mcmp/disjoint_set.hpp"
#include "mcmp/message_passing.hpp"

namespace mcmp {

namespace {

struct ContractionCandidate {
    double weight;
    std::size_t a, b; // cluster representatives, a < b
};

struct CandidateOrder {
    bool operator()(const ContractionCandidate& x, const ContractionCandidate& y) const {
        if (x.weight != y.weight)
            return x.weight < y.weight;
        return std::make_pair(x.a, x.b) > std::make_pair(y.a, y.b);
    }
};

} // namespace

Partition gaec(const MulticutInstance& instance, std::span<const double> costs,
               std::vector<std::pair<std::size_t, std::size_t>>* merge_log) {
    if (costs.size() != instance.edge_count())
        throw std::invalid_argument("cost vector length does not match edge count");
    std::size_t n = instance.node_count();
    DisjointSet ds(n);
    std::vector<std::size_t> rep(n); // root -> smallest node of its cluster
    for (std::size_t v = 0; v < n; ++v)
        rep[v] = v;

    std::vector<std::unordered_map<std::size_t, double>> weight(n);
    for (std::size_t e = 0; e < instance.edge_count(); ++e) {
        const auto& edge = instance.edge(e);
        weight[edge.u][edge.v] += costs[e];
        weight[edge.v][edge.u] += costs[e];
    }

    std::priority_queue<ContractionCandidate, std::vector<ContractionCandidate>, CandidateOrder>
        heap;
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& [v, w] : weight[u])
            if (u < v && w > 0.0)
                heap.push({w, u, v});

    auto is_rep = [&](std::size_t v) { return rep[ds.find(v)] == v; };
    while (!heap.empty()) {
        ContractionCandidate top = heap.top();
        heap.pop();
        if (!is_rep(top.a) || !is_rep(top.b))
            continue;
        auto it = weight[top.a].find(top.b);
        if (it == weight[top.a].end() || it->second != top.weight)
            continue; // stale entry

        if (merge_log)
            merge_log->emplace_back(top.a, top.b);
        weight[top.a].erase(top.b);
        weight[top.b].erase(top.a);
        ds.join(top.a, top.b);
        rep[ds.find(top.a)] = top.a; // a < b, so a stays the smallest node
        for (const auto& [c, w] : weight[top.b]) {
            double merged = (weight[top.a][c] += w);
            weight[c].erase(top.b);
            weight[c][top.a] = merged;
            if (merged > 0.0)
                heap.push({merged, std::min(top.a, c), std::max(top.a, c)});
        }
        weight[top.b].clear();
    }

    Partition partition;
    partition.component_id.assign(n, 0);
    std::vector<std::size_t> root_to_id(n, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t r = ds.find(v);
        if (root_to_id[r] == SIZE_MAX)
            root_to_id[r] = next++;
        partition.component_id[v] = root_to_id[r];
    }
    partition.component_count = next;
    return partition;
}

namespace {

constexpr double gain_tolerance = 1e-12;

} // namespace

// Kernighan-Lin gain sequence between two labels over the given node set.
// Tentatively moves every node once (highest gain first), then commits the
// best strict-improvement prefix. Returns true if anything was committed.
static bool kl_sequence(std::vector<std::size_t>& label,
                        const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
                        std::span<const double> costs, const std::vector<std::size_t>& nodes,
                        std::size_t label0, std::size_t label1) {
    std::size_t n = nodes.size();
    if (n == 0)
        return false;
    std::unordered_map<std::size_t, std::size_t> local; // node -> index in nodes
    local.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        local.emplace(nodes[i], i);

    std::vector<std::uint8_t> side(n), moved(n, 0);
    std::vector<double> gain(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        side[i] = label[nodes[i]] == label1 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [w, e] : adj[nodes[i]]) {
            auto it = local.find(w);
            if (it == local.end())
                continue;
            if (side[it->second] == side[i])
                gain[i] -= costs[e]; // would become cut
            else
                gain[i] += costs[e]; // would become joined
        }
    }

    std::vector<std::size_t> sequence;
    sequence.reserve(n);
    double cum = 0.0, best_cum = 0.0;
    std::size_t best_len = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = SIZE_MAX;
        for (std::size_t i = 0; i < n; ++i)
            if (!moved[i] && (pick == SIZE_MAX || gain[i] > gain[pick]))
                pick = i;
        cum += gain[pick];
        moved[pick] = 1;
        sequence.push_back(pick);
        std::uint8_t old_side = side[pick];
        side[pick] ^= 1;
        for (const auto& [w, e] : adj[nodes[pick]]) {
            auto it = local.find(w);
            if (it == local.end() || moved[it->second])
                continue;
            if (side[it->second] == old_side)
                gain[it->second] += 2.0 * costs[e];
            else
                gain[it->second] -= 2.0 * costs[e];
        }
        if (cum > best_cum + gain_tolerance) {
            best_cum = cum;
            best_len = step + 1;
        }
    }
    if (best_len == 0)
        return false;
    for (std::size_t i = 0; i < best_len; ++i) {
        std::size_t v = nodes[sequence[i]];
        label[v] = label[v] == label0 ? label1 : label0;
    }
    return true;
}

Partition klj(const MulticutInstance& instance, std::span<const double> costs,
              const Partition& initial) {
    if (costs.size() != instance.edge_count())
        throw std::invalid_argument("cost vector length does not match edge count");
    if (initial.component_id.size() != instance.node_count())
        throw std::invalid_argument("initial partition does not cover all nodes");

    constexpr std::size_t max_passes = 25;
    std::size_t n = instance.node_count();

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t e = 0; e < instance.edge_count(); ++e) {
        adj[instance.edge(e).u].emplace_back(instance.edge(e).v, e);
        adj[instance.edge(e).v].emplace_back(instance.edge(e).u, e);
    }

    std::vector<std::size_t> label = initial.component_id;
    std::size_t next_label = initial.component_count;

    auto cost_of = [&](const std::vector<std::size_t>& l) {
        double total = 0.0;
        for (std::size_t e = 0; e < instance.edge_count(); ++e)
            if (l[instance.edge(e).u] != l[instance.edge(e).v])
                total += costs[e];
        return total;
    };
    // Representative (smallest node) of every non-empty label, ascending scan.
    auto representatives = [&]() {
        std::unordered_map<std::size_t, std::size_t> rep;
        for (std::size_t v = 0; v < n; ++v)
            rep.emplace(label[v], v);
        return rep;
    };
    auto nodes_of = [&](std::size_t l) {
        std::vector<std::size_t> nodes;
        for (std::size_t v = 0; v < n; ++v)
            if (label[v] == l)
                nodes.push_back(v);
        return nodes;
    };

    std::vector<std::size_t> best_label = label;
    double best_cost = cost_of(label);

    // Pass order: joins, then pairwise exchanges, then spawns. Joins go first
    // so that under-merged components (e.g. plateau partitions produced by a
    // rounding run on reparameterized costs) are repaired before node moves
    // can commit to a different basin.
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool improved = false;

        // joining adjacent components while any join strictly helps
        {
            while (true) {
                auto rep = representatives();
                std::map<std::pair<std::size_t, std::size_t>, double> joint; // (repa,repb) -> weight
                std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>
                    labels_of;
                for (std::size_t e = 0; e < instance.edge_count(); ++e) {
                    std::size_t la = label[instance.edge(e).u];
                    std::size_t lb = label[instance.edge(e).v];
                    if (la == lb)
                        continue;
                    std::size_t ra = rep[la], rb = rep[lb];
                    if (ra > rb) {
                        std::swap(ra, rb);
                        std::swap(la, lb);
                    }
                    joint[{ra, rb}] += costs[e];
                    labels_of[{ra, rb}] = {la, lb};
                }
                std::pair<std::size_t, std::size_t> best_pair{};
                double best_weight = gain_tolerance;
                bool found = false;
                for (const auto& [pair, w] : joint)
                    if (w > best_weight) {
                        best_weight = w;
                        best_pair = pair;
                        found = true;
                    }
                if (!found)
                    break;
                auto [la, lb] = labels_of[best_pair];
                for (std::size_t v = 0; v < n; ++v)
                    if (label[v] == lb)
                        label[v] = la;
                improved = true;
            }
        }

        // node exchanges between adjacent components
        {
            auto rep = representatives();
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> pairs;
            for (std::size_t e = 0; e < instance.edge_count(); ++e) {
                std::size_t la = label[instance.edge(e).u];
                std::size_t lb = label[instance.edge(e).v];
                if (la == lb)
                    continue;
                if (rep[la] > rep[lb])
                    std::swap(la, lb);
                pairs.emplace_back(rep[la], rep[lb], la, lb);
            }
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            for (const auto& [ra, rb, la, lb] : pairs) {
                std::vector<std::size_t> nodes;
                for (std::size_t v = 0; v < n; ++v)
                    if (label[v] == la || label[v] == lb)
                        nodes.push_back(v);
                bool any_a = false, any_b = false;
                for (std::size_t v : nodes)
                    (label[v] == la ? any_a : any_b) = true;
                if (!any_a || !any_b)
                    continue; // component vanished through an earlier commit
                improved |= kl_sequence(label, adj, costs, nodes, la, lb);
            }
        }

        // spawning a new component from boundary nodes
        {
            auto rep = representatives();
            std::vector<std::pair<std::size_t, std::size_t>> comps; // (rep, label)
            for (const auto& [l, r] : rep)
                comps.emplace_back(r, l);
            std::sort(comps.begin(), comps.end());
            for (const auto& [r, l] : comps) {
                std::vector<std::size_t> nodes = nodes_of(l);
                if (nodes.size() < 2)
                    continue;
                std::size_t fresh = next_label++;
                improved |= kl_sequence(label, adj, costs, nodes, l, fresh);
            }
        }

        double cost = cost_of(label);
        if (cost < best_cost) {
            best_cost = cost;
            best_label = label;
        }
        if (!improved)
            break;
    }
    return partition_from_labels(best_label);
}

RoundedSolution round_solution(FactorGraph& graph) {
    edge_receive_sweep(graph);
    const MulticutInstance& instance = graph.instance();
    std::span<const double> original = graph.original_costs();
    std::vector<double> reparameterized;
    reparameterized.reserve(instance.edge_count());
    for (const auto& f : graph.edge_factors())
        reparameterized.push_back(f.cost);
    // A converged reparameterization prices every optimal multicut equally,
    // which leaves exact zeros on the edges the dual is indifferent about.
    // A second variant breaks those ties toward the original preference so
    // contraction does not strand indifferent edges as cut.
    std::vector<double> tie_broken = reparameterized;
    for (std::size_t e = 0; e < tie_broken.size(); ++e)
        tie_broken[e] += 1e-9 * original[e];

    // The reparameterized candidates get a final pass under the true
    // objective: at a tight dual optimum their landscape is flat across all
    // optimal multicuts and the run can stall on a plateau partition.
    Partition best = klj(instance, original, gaec(instance, original));
    double best_cost = partition_cost(instance, original, best);
    for (const auto& costs : {reparameterized, tie_broken}) {
        Partition candidate =
            klj(instance, original, klj(instance, costs, gaec(instance, costs)));
        double cost = partition_cost(instance, original, candidate);
        if (cost < best_cost) {
            best_cost = cost;
            best = std::move(candidate);
        }
    }

    RoundedSolution solution;
    solution.partition = std::move(best);
    solution.labeling = partition_to_labeling(instance, solution.partition);
    solution.cost = labeling_cost(original, solution.labeling);
    return solution;
}

} // namespace mcmp
