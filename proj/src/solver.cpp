#include "mcmp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mcmp/factor_graph.hpp"
#include "mcmp/message_passing.hpp"
#include "mcmp/rounding.hpp"
#include "mcmp/separation.hpp"

namespace mcmp {

namespace {

constexpr double certified_gap = 1e-9;

void validate(const SolveConfig& config) {
    if (config.separation_interval < 1 || config.rounding_interval < 1)
        throw std::invalid_argument("intervals must be >= 1");
    if (!(config.epsilon > 0.0))
        throw std::invalid_argument("epsilon must be > 0");
    if (!(config.time_limit_seconds > 0.0))
        throw std::invalid_argument("time limit must be > 0");
}

} // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::optimal:
        return "optimal";
    case SolveStatus::iteration_limit:
        return "iteration-limit";
    case SolveStatus::time_limit:
        return "time-limit";
    }
    return "unknown";
}

SolveResult solve(const MulticutInstance& instance, const SolveConfig& config) {
    validate(config);
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    FactorGraph graph(instance);
    FactorOrder order = compute_factor_order(graph);

    SolveResult result;
    double lb = graph.dual_lower_bound();
    RoundedSolution incumbent = round_solution(graph);

    auto record = [&](std::size_t iteration) {
        result.records.push_back({elapsed(), iteration, lb, incumbent.cost,
                                  graph.instance().edge_count(), graph.triangle_factors().size(),
                                  graph.lollipop_factors().size()});
    };
    record(0);

    result.status = SolveStatus::iteration_limit;
    if (incumbent.cost - lb <= certified_gap) {
        result.status = SolveStatus::optimal;
    } else {
        for (std::size_t iteration = 1; iteration <= config.max_iterations; ++iteration) {
            lb = run_iteration(graph, order);

            if (iteration % config.separation_interval == 0) {
                // Odd wheels are detected before the edge_receive sweep: the
                // sweep equalizes triangle conditional minima and would erase
                // the one-spoke-cut margin the wheel test looks for.
                std::vector<ViolatedOddWheel> wheels;
                if (config.tighten == TightenMode::cycles_and_odd_wheels)
                    wheels = separate_odd_wheels(graph, config.epsilon);
                edge_receive_sweep(graph);
                for (const auto& cycle : separate_cycles(graph, config.epsilon))
                    triangulate_cycle(graph, cycle);
                for (const auto& wheel : wheels)
                    attach_odd_wheel(graph, wheel);
                order = compute_factor_order(graph);
                lb = graph.dual_lower_bound();
            }
            if (iteration % config.rounding_interval == 0) {
                RoundedSolution rounded = round_solution(graph);
                if (rounded.cost < incumbent.cost)
                    incumbent = std::move(rounded);
            }
            record(iteration);
            if (incumbent.cost - lb <= certified_gap) {
                result.status = SolveStatus::optimal;
                break;
            }
            if (elapsed() > config.time_limit_seconds) {
                result.status = SolveStatus::time_limit;
                break;
            }
        }
    }

    // Project the incumbent onto the input instance; chords only ever carry
    // original cost zero, so the objective value is unchanged.
    result.best_partition = std::move(incumbent.partition);
    result.best_labeling = partition_to_labeling(instance, result.best_partition);
    result.upper_bound = labeling_cost(instance, result.best_labeling);
    result.lower_bound = lb;
    return result;
}

namespace {

std::string number(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

} // namespace

void write_csv(const std::vector<ConvergenceRecord>& records, std::ostream& out) {
    if (records.empty())
        throw std::invalid_argument("no records to write");
    out << "time,iter,lb,ub,n_triangles,n_lollipops\n";
    for (const auto& r : records) {
        out << std::fixed << std::setprecision(6) << r.wall_time << std::defaultfloat << ','
            << r.iteration << ',' << number(r.lower_bound) << ',' << number(r.best_upper_bound)
            << ',' << r.n_triangles << ',' << r.n_lollipops << '\n';
    }
}

void write_csv(const std::vector<ConvergenceRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(records, out);
    if (!out.good())
        throw std::runtime_error("failed writing '" + path + "'");
}

void write_svg(const std::vector<ConvergenceRecord>& records, std::ostream& out) {
    if (records.empty())
        throw std::invalid_argument("no records to plot");

    constexpr double width = 800, height = 500;
    constexpr double left = 80, right = 20, top = 20, bottom = 60;

    double t_min = 1e30, t_max = 0.0;
    for (const auto& r : records) {
        double t = std::max(r.wall_time, 1e-6);
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
    }
    double x_lo = std::log10(t_min), x_hi = std::log10(t_max);
    if (x_hi - x_lo < 1e-9) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    double y_lo = 1e30, y_hi = -1e30;
    for (const auto& r : records) {
        y_lo = std::min({y_lo, r.lower_bound, r.best_upper_bound});
        y_hi = std::max({y_hi, r.lower_bound, r.best_upper_bound});
    }
    if (y_hi - y_lo < 1e-12) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto x_of = [&](double t) {
        double lt = std::log10(std::max(t, 1e-6));
        return left + (lt - x_lo) / (x_hi - x_lo) * (width - left - right);
    };
    auto y_of = [&](double v) {
        return height - bottom - (v - y_lo) / (y_hi - y_lo) * (height - top - bottom);
    };
    auto polyline = [&](auto value_of, const char* style) {
        out << "  <polyline fill=\"none\" " << style << " points=\"";
        for (const auto& r : records)
            out << x_of(r.wall_time) << ',' << y_of(value_of(r)) << ' ';
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    // axes
    out << "  <line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
        << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    // x ticks at integer powers of ten
    for (int p = static_cast<int>(std::ceil(x_lo)); p <= static_cast<int>(std::floor(x_hi)); ++p) {
        double x = x_of(std::pow(10.0, p));
        out << "  <line x1=\"" << x << "\" y1=\"" << height - bottom << "\" x2=\"" << x
            << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << x << "\" y=\"" << height - bottom + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << p << "</text>\n";
    }
    // y ticks
    for (int k = 0; k <= 4; ++k) {
        double v = y_lo + (y_hi - y_lo) * k / 4.0;
        double y = y_of(v);
        out << "  <line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << std::setprecision(6) << v
            << "</text>\n";
    }
    out << "  <text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">time [s], log scale</text>\n";
    out << "  <text x=\"18\" y=\"" << (top + height - bottom) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (top + height - bottom) / 2 << ")\">objective</text>\n";

    polyline([](const ConvergenceRecord& r) { return r.lower_bound; },
             "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    polyline([](const ConvergenceRecord& r) { return r.best_upper_bound; },
             "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");
    out << "  <text x=\"" << width - right - 10 << "\" y=\"" << top + 16
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f77b4\">lower bound "
           "(solid)</text>\n";
    out << "  <text x=\"" << width - right - 10 << "\" y=\"" << top + 32
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\">upper bound "
           "(dashed)</text>\n";
    out << "</svg>\n";
}

void write_svg(const std::vector<ConvergenceRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_svg(records, out);
    if (!out.good())
        throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace mcmp
