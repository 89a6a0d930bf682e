#include "mcmp/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcmp {

PartitionEnumerator::PartitionEnumerator(std::size_t node_count) : rgs_(node_count, 0) {
    if (node_count > max_nodes)
        throw std::invalid_argument("partition enumeration capped at " + std::to_string(max_nodes) +
                                    " nodes");
}

bool PartitionEnumerator::next() {
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
        return true; // all-zero growth string = single component
    }
    // Successor in restricted-growth-string order: a[i] <= max(a[0..i-1]) + 1.
    for (std::size_t i = rgs_.size(); i-- > 1;) {
        std::size_t prefix_max = 0;
        for (std::size_t j = 0; j < i; ++j)
            prefix_max = std::max(prefix_max, rgs_[j]);
        if (rgs_[i] <= prefix_max) {
            ++rgs_[i];
            std::fill(rgs_.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs_.end(), 0);
            return true;
        }
    }
    done_ = true;
    return false;
}

std::size_t PartitionEnumerator::component_count() const {
    std::size_t max_id = 0;
    for (std::size_t id : rgs_)
        max_id = std::max(max_id, id);
    return rgs_.empty() ? 0 : max_id + 1;
}

Partition PartitionEnumerator::partition() const {
    Partition p;
    p.component_id = rgs_;
    p.component_count = component_count();
    return p;
}

ExactSolution exact_optimum(const MulticutInstance& instance) {
    if (instance.node_count() > PartitionEnumerator::max_nodes)
        throw std::invalid_argument("exact_optimum capped at " +
                                    std::to_string(PartitionEnumerator::max_nodes) + " nodes");
    PartitionEnumerator en(instance.node_count());
    ExactSolution best;
    bool first = true;
    while (en.next()) {
        auto ids = en.component_id();
        double cost = 0.0;
        for (const auto& e : instance.edges())
            if (ids[e.u] != ids[e.v])
                cost += e.cost;
        if (first || cost < best.cost) {
            first = false;
            best.cost = cost;
            best.partition = en.partition();
        }
    }
    if (first) { // zero nodes: the empty partition
        best.cost = 0.0;
        best.partition = Partition{};
    }
    return best;
}

namespace {

constexpr std::size_t max_cycle_nodes = 8;

void cycle_dfs(const std::vector<std::vector<std::size_t>>& adj, std::size_t start,
               std::vector<std::size_t>& path, std::vector<bool>& on_path,
               std::vector<std::vector<std::size_t>>& out) {
    std::size_t current = path.back();
    for (std::size_t next : adj[current]) {
        if (next <= start || on_path[next])
            continue;
        path.push_back(next);
        on_path[next] = true;
        if (path.size() >= 3 && path[1] < next) {
            bool closes = std::find(adj[next].begin(), adj[next].end(), start) != adj[next].end();
            if (closes)
                out.push_back(path);
        }
        cycle_dfs(adj, start, path, on_path, out);
        on_path[next] = false;
        path.pop_back();
    }
}

} // namespace

std::vector<std::vector<std::size_t>> all_simple_cycles(const MulticutInstance& instance) {
    if (instance.node_count() > max_cycle_nodes)
        throw std::invalid_argument("cycle enumeration capped at " +
                                    std::to_string(max_cycle_nodes) + " nodes");
    std::vector<std::vector<std::size_t>> adj(instance.node_count());
    for (const auto& e : instance.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> path;
    std::vector<bool> on_path(instance.node_count(), false);
    for (std::size_t s = 0; s < instance.node_count(); ++s) {
        path.assign(1, s);
        std::fill(on_path.begin(), on_path.end(), false);
        on_path[s] = true;
        cycle_dfs(adj, s, path, on_path, cycles);
    }
    return cycles;
}

std::vector<std::vector<std::size_t>> all_qualifying_cycles(const MulticutInstance& instance,
                                                            std::span<const double> costs,
                                                            double epsilon) {
    if (costs.size() != instance.edge_count())
        throw std::invalid_argument("cost vector length does not match edge count");
    std::vector<std::vector<std::size_t>> result;
    for (auto& cycle : all_simple_cycles(instance)) {
        std::size_t repair_edges = 0;
        bool qualifies = true;
        for (std::size_t i = 0; i < cycle.size() && qualifies; ++i) {
            std::size_t e = *instance.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
            if (costs[e] <= -epsilon)
                ++repair_edges;
            else if (costs[e] < epsilon)
                qualifies = false;
        }
        if (qualifies && repair_edges == 1)
            result.push_back(std::move(cycle));
    }
    return result;
}

bool check_cycle_point(const MulticutInstance& instance, std::span<const double> x) {
    if (x.size() != instance.edge_count())
        throw std::invalid_argument("point length does not match edge count");
    for (double v : x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("point component out of [0,1]");
    for (const auto& cycle : all_simple_cycles(instance)) {
        double sum = 0.0;
        double max_value = 0.0;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            std::size_t e = *instance.find_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
            sum += x[e];
            max_value = std::max(max_value, x[e]);
        }
        // x_e <= sum over the rest, for the worst choice of distinguished edge
        if (2.0 * max_value > sum + 1e-9)
            return false;
    }
    return true;
}

} // namespace mcmp
