#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcmp/instance.hpp"

namespace mcmp {

enum class TightenMode { cycles, cycles_and_odd_wheels };

struct SolveConfig {
    std::size_t max_iterations = 1000;
    std::size_t separation_interval = 10; // separation runs every this many iterations
    std::size_t rounding_interval = 100;  // primal rounding likewise
    double epsilon = 1e-4;                // guaranteed-increase threshold for separation
    TightenMode tighten = TightenMode::cycles;
    double time_limit_seconds = 3600.0;
    std::uint64_t seed = 0; // reserved for randomized tie-breaks; unused
};

struct ConvergenceRecord {
    double wall_time = 0.0;
    std::size_t iteration = 0;
    double lower_bound = 0.0;
    double best_upper_bound = 0.0;
    std::size_t n_edges = 0;
    std::size_t n_triangles = 0;
    std::size_t n_lollipops = 0;
};

enum class SolveStatus { optimal, iteration_limit, time_limit };

const char* to_string(SolveStatus status);

struct SolveResult {
    EdgeLabeling best_labeling; // indexed like the input instance's edges
    Partition best_partition;
    double upper_bound = 0.0;
    double lower_bound = 0.0;
    SolveStatus status = SolveStatus::iteration_limit;
    std::vector<ConvergenceRecord> records;
};

// Message passing interleaved with cutting-plane separation and rounding.
// Stops on the iteration limit, the time limit, or a certified optimum
// (upper bound - lower bound <= 1e-9).
SolveResult solve(const MulticutInstance& instance, const SolveConfig& config);

// Columns: time,iter,lb,ub,n_triangles,n_lollipops.
void write_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out);
void write_csv(const std::vector<ConvergenceRecord>& records, const std::string& path);

// Convergence plot: solid lower bound and dashed upper bound over log10 time.
void write_svg(const std::vector<ConvergenceRecord>& records, std::ostream& out);
void write_svg(const std::vector<ConvergenceRecord>& records, const std::string& path);

} // namespace mcmp
