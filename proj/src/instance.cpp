#include "mcmp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mcmp/disjoint_set.hpp"

namespace mcmp {

std::size_t MulticutInstance::add_edge(std::size_t u, std::size_t v, double cost) {
    if (u == v)
        throw std::runtime_error("self-loop edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u >= node_count_ || v >= node_count_)
        throw std::runtime_error("node index out of range: (" + std::to_string(u) + "," +
                                 std::to_string(v) + ") with " + std::to_string(node_count_) + " nodes");
    if (!std::isfinite(cost))
        throw std::runtime_error("non-finite edge cost");
    if (u > v)
        std::swap(u, v);
    if (auto it = index_.find(key(u, v)); it != index_.end()) {
        edges_[it->second].cost += cost;
        return it->second;
    }
    edges_.push_back({u, v, cost});
    index_.emplace(key(u, v), edges_.size() - 1);
    return edges_.size() - 1;
}

std::optional<std::size_t> MulticutInstance::find_edge(std::size_t u, std::size_t v) const {
    if (u > v)
        std::swap(u, v);
    if (auto it = index_.find(key(u, v)); it != index_.end())
        return it->second;
    return std::nullopt;
}

namespace {

bool content_line(const std::string& line, std::istringstream& tokens) {
    std::size_t i = line.find_first_not_of(" \t\r\n");
    if (i == std::string::npos || line[i] == '#')
        return false;
    tokens.clear();
    tokens.str(line);
    return true;
}

} // namespace

MulticutInstance parse_instance(std::istream& in) {
    std::string line;
    std::istringstream tokens;

    while (std::getline(in, line))
        if (content_line(line, tokens))
            break;
    std::string magic;
    long long n = -1, m = -1;
    if (!(tokens >> magic >> n >> m) || magic != "MULTICUT" || n < 0 || m < 0)
        throw std::runtime_error("malformed header, expected 'MULTICUT <n> <m>'");

    MulticutInstance instance(static_cast<std::size_t>(n));
    long long parsed = 0;
    while (parsed < m) {
        if (!std::getline(in, line))
            throw std::runtime_error("unexpected end of input, expected " + std::to_string(m) +
                                     " edges, got " + std::to_string(parsed));
        if (!content_line(line, tokens))
            continue;
        long long u = -1, v = -1;
        double cost = 0.0;
        std::string extra;
        if (!(tokens >> u >> v >> cost) || (tokens >> extra))
            throw std::runtime_error("malformed edge line: '" + line + "'");
        if (u < 0 || v < 0)
            throw std::runtime_error("negative node index in edge line: '" + line + "'");
        instance.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), cost);
        ++parsed;
    }
    while (std::getline(in, line))
        if (content_line(line, tokens))
            throw std::runtime_error("trailing content after edge list: '" + line + "'");
    return instance;
}

MulticutInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

double labeling_cost(const MulticutInstance& instance, const EdgeLabeling& labeling) {
    if (labeling.size() != instance.edge_count())
        throw std::invalid_argument("labeling length does not match edge count");
    double total = 0.0;
    for (std::size_t e = 0; e < labeling.size(); ++e)
        if (labeling[e])
            total += instance.edge(e).cost;
    return total;
}

double labeling_cost(std::span<const double> costs, const EdgeLabeling& labeling) {
    if (labeling.size() != costs.size())
        throw std::invalid_argument("labeling length does not match cost vector");
    double total = 0.0;
    for (std::size_t e = 0; e < labeling.size(); ++e)
        if (labeling[e])
            total += costs[e];
    return total;
}

Partition components_of_uncut(const MulticutInstance& instance, const EdgeLabeling& labeling) {
    if (labeling.size() != instance.edge_count())
        throw std::invalid_argument("labeling length does not match edge count");
    DisjointSet ds(instance.node_count());
    for (std::size_t e = 0; e < labeling.size(); ++e)
        if (!labeling[e])
            ds.join(instance.edge(e).u, instance.edge(e).v);

    Partition partition;
    partition.component_id.assign(instance.node_count(), 0);
    std::vector<std::size_t> root_to_id(instance.node_count(), SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t v = 0; v < instance.node_count(); ++v) {
        std::size_t r = ds.find(v);
        if (root_to_id[r] == SIZE_MAX)
            root_to_id[r] = next++;
        partition.component_id[v] = root_to_id[r];
    }
    partition.component_count = next;
    return partition;
}

bool is_multicut(const MulticutInstance& instance, const EdgeLabeling& labeling) {
    Partition partition = components_of_uncut(instance, labeling);
    for (std::size_t e = 0; e < labeling.size(); ++e)
        if (labeling[e] &&
            partition.component_id[instance.edge(e).u] == partition.component_id[instance.edge(e).v])
            return false;
    return true;
}

EdgeLabeling partition_to_labeling(const MulticutInstance& instance, const Partition& partition) {
    if (partition.component_id.size() != instance.node_count())
        throw std::invalid_argument("partition does not cover all nodes");
    EdgeLabeling labeling(instance.edge_count(), 0);
    for (std::size_t e = 0; e < instance.edge_count(); ++e)
        labeling[e] = partition.component_id[instance.edge(e).u] !=
                              partition.component_id[instance.edge(e).v]
                          ? 1
                          : 0;
    return labeling;
}

double partition_cost(const MulticutInstance& instance, const Partition& partition) {
    double total = 0.0;
    for (const auto& e : instance.edges())
        if (partition.component_id[e.u] != partition.component_id[e.v])
            total += e.cost;
    return total;
}

double partition_cost(const MulticutInstance& instance, std::span<const double> costs,
                      const Partition& partition) {
    double total = 0.0;
    for (std::size_t e = 0; e < instance.edge_count(); ++e)
        if (partition.component_id[instance.edge(e).u] != partition.component_id[instance.edge(e).v])
            total += costs[e];
    return total;
}

Partition partition_from_labels(std::span<const std::size_t> labels) {
    Partition partition;
    partition.component_id.assign(labels.size(), 0);
    std::unordered_map<std::size_t, std::size_t> remap;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto [it, inserted] = remap.emplace(labels[v], remap.size());
        partition.component_id[v] = it->second;
    }
    partition.component_count = remap.size();
    return partition;
}

void write_solution(std::ostream& out, const MulticutInstance& instance,
                    const EdgeLabeling& labeling, const Partition& partition) {
    for (std::size_t e = 0; e < instance.edge_count(); ++e)
        out << instance.edge(e).u << ' ' << instance.edge(e).v << ' ' << int(labeling[e]) << '\n';
    for (std::size_t v = 0; v < partition.component_id.size(); ++v)
        out << v << ' ' << partition.component_id[v] << '\n';
}

} // namespace mcmp
