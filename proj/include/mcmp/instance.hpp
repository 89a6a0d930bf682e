#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcmp {

// Edge labeling of an instance: 1 = cut, 0 = joined, indexed like the edge list.
using EdgeLabeling = std::vector<std::uint8_t>;

// Node partition with contiguous component ids 0..component_count-1.
struct Partition {
    std::vector<std::size_t> component_id;
    std::size_t component_count = 0;
};

// Undirected graph with real edge costs. Edges are canonicalized to u < v and
// parallel edges are merged by summing their costs. Edge indices are stable:
// later additions (e.g. chords) always append at the end.
class MulticutInstance {
public:
    struct Edge {
        std::size_t u;
        std::size_t v;
        double cost;
    };

    MulticutInstance() = default;
    explicit MulticutInstance(std::size_t node_count) : node_count_(node_count) {}

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }

    // Adds (or merges into) the canonical edge {u,v}; returns its index.
    std::size_t add_edge(std::size_t u, std::size_t v, double cost);

    std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const;

private:
    static std::uint64_t key(std::size_t u, std::size_t v) {
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
    }

    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Text format: header `MULTICUT <n> <m>`, then m lines `<u> <v> <cost>`.
// Lines starting with '#' are comments. Throws std::runtime_error on
// malformed input, out-of-range node indices, self-loops or non-finite costs.
MulticutInstance parse_instance(std::istream& in);
MulticutInstance load_instance(const std::string& path);

double labeling_cost(const MulticutInstance& instance, const EdgeLabeling& labeling);
double labeling_cost(std::span<const double> costs, const EdgeLabeling& labeling);

// Connected components of the subgraph of uncut (label 0) edges.
Partition components_of_uncut(const MulticutInstance& instance, const EdgeLabeling& labeling);

// True iff every cut edge joins distinct components of the uncut subgraph.
bool is_multicut(const MulticutInstance& instance, const EdgeLabeling& labeling);

// The multicut induced by a partition; always satisfies is_multicut.
EdgeLabeling partition_to_labeling(const MulticutInstance& instance, const Partition& partition);

double partition_cost(const MulticutInstance& instance, const Partition& partition);
double partition_cost(const MulticutInstance& instance, std::span<const double> costs,
                      const Partition& partition);

// Renumbers arbitrary node labels to contiguous ids in first-appearance order.
Partition partition_from_labels(std::span<const std::size_t> labels);

// One line per edge `<u> <v> <label>`, then one line per node `<node> <component>`.
void write_solution(std::ostream& out, const MulticutInstance& instance,
                    const EdgeLabeling& labeling, const Partition& partition);

} // namespace mcmp
