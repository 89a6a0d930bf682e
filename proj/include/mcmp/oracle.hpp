#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcmp/instance.hpp"

namespace mcmp {

// Iterates all set partitions of {0..n-1} in restricted-growth-string order.
// Desk-scale only: n <= 12 (Bell(12) ~ 4.2M).
class PartitionEnumerator {
public:
    static constexpr std::size_t max_nodes = 12;

    explicit PartitionEnumerator(std::size_t node_count);

    // Advances to the next partition; false once exhausted.
    bool next();

    std::span<const std::size_t> component_id() const { return rgs_; }
    std::size_t component_count() const;
    Partition partition() const;

private:
    std::vector<std::size_t> rgs_;
    bool started_ = false;
    bool done_ = false;
};

struct ExactSolution {
    double cost = 0.0;
    Partition partition;
};

// Brute-force minimum over all partitions; ties broken by enumeration order.
ExactSolution exact_optimum(const MulticutInstance& instance);

// All simple cycles (length >= 3) as node sequences, minimum node first,
// orientation with the smaller second node. node_count <= 8.
std::vector<std::vector<std::size_t>> all_simple_cycles(const MulticutInstance& instance);

// Simple cycles with exactly one edge of cost <= -epsilon and all remaining
// edges of cost >= epsilon.
std::vector<std::vector<std::size_t>> all_qualifying_cycles(const MulticutInstance& instance,
                                                            std::span<const double> costs,
                                                            double epsilon);

// Checks a fractional point x in [0,1]^E against every cycle inequality.
bool check_cycle_point(const MulticutInstance& instance, std::span<const double> x);

} // namespace mcmp
