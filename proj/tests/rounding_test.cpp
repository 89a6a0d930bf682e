#include <doctest.h>

#include <random>

#include "mcmp/factor_graph.hpp"
#include "mcmp/message_passing.hpp"
#include "mcmp/oracle.hpp"
#include "mcmp/rounding.hpp"
#include "mcmp/separation.hpp"
#include "test_support.hpp"

using namespace mcmp;

namespace {

std::vector<double> costs_of(const MulticutInstance& g) {
    std::vector<double> costs;
    for (const auto& e : g.edges())
        costs.push_back(e.cost);
    return costs;
}

} // namespace

TEST_CASE("gaec leaves all-negative instances as singletons") {
    MulticutInstance g = test::cycle_instance(5, -1.0);
    Partition p = gaec(g, costs_of(g));
    CHECK(p.component_count == 5);
}

TEST_CASE("gaec merges all-positive instances into one cluster") {
    MulticutInstance g = test::cycle_instance(5, 1.0);
    Partition p = gaec(g, costs_of(g));
    CHECK(p.component_count == 1);
    CHECK(partition_cost(g, p) == 0.0);
}

TEST_CASE("gaec on the triangle reaches the optimum") {
    MulticutInstance g = test::triangle_instance();
    std::vector<std::pair<std::size_t, std::size_t>> merges;
    Partition p = gaec(g, costs_of(g), &merges);
    CHECK(partition_cost(g, p) == -1.0);
    // one +1 contraction, then the remaining inter-cluster weight is -1
    REQUIRE(merges.size() == 1);
    CHECK(merges[0] == std::pair<std::size_t, std::size_t>{0, 2}); // smallest max-weight pair
}

TEST_CASE("gaec contraction sequence never increases the cost") {
    std::mt19937 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        MulticutInstance g = test::random_instance(rng, 9);
        std::vector<std::pair<std::size_t, std::size_t>> merges;
        Partition p = gaec(g, costs_of(g), &merges);
        CHECK(is_multicut(g, partition_to_labeling(g, p)));

        // replay the merges: every prefix must cost no more than the one before
        std::vector<std::size_t> labels(g.node_count());
        for (std::size_t v = 0; v < g.node_count(); ++v)
            labels[v] = v;
        double previous = partition_cost(g, partition_from_labels(labels));
        CHECK(previous == partition_cost(g, partition_from_labels(labels)));
        for (const auto& [a, b] : merges) {
            std::size_t from = labels[b], to = labels[a];
            for (auto& l : labels)
                if (l == from)
                    l = to;
            double current = partition_cost(g, partition_from_labels(labels));
            CHECK(current < previous);
            previous = current;
        }
        CHECK(partition_cost(g, p) == doctest::Approx(previous));
    }
}

TEST_CASE("klj keeps an optimal initial partition") {
    MulticutInstance g = test::triangle_instance();
    Partition best = partition_from_labels(std::vector<std::size_t>{0, 1, 1});
    Partition improved = klj(g, costs_of(g), best);
    CHECK(partition_cost(g, improved) == -1.0);
}

TEST_CASE("klj escapes the single-cluster start on the triangle") {
    MulticutInstance g = test::triangle_instance();
    Partition all_in_one = partition_from_labels(std::vector<std::size_t>{0, 0, 0});
    CHECK(partition_cost(g, all_in_one) == 0.0);
    Partition improved = klj(g, costs_of(g), all_in_one);
    CHECK(partition_cost(g, improved) <= -1.0);
}

TEST_CASE("klj never increases the cost") {
    std::mt19937 rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        MulticutInstance g = test::random_instance(rng, 9);
        Partition initial = test::random_partition(rng, g.node_count());
        Partition improved = klj(g, costs_of(g), initial);
        CHECK(partition_cost(g, improved) <= partition_cost(g, initial) + 1e-12);
        CHECK(is_multicut(g, partition_to_labeling(g, improved)));
    }
}

TEST_CASE("gaec+klj reaches the oracle optimum on small instances") {
    std::mt19937 rng(63);
    int hits = 0, total = 0;
    for (int trial = 0; trial < 30; ++trial) {
        MulticutInstance g = test::random_instance(rng, 7);
        Partition p = klj(g, costs_of(g), gaec(g, costs_of(g)));
        double optimum = exact_optimum(g).cost;
        ++total;
        if (partition_cost(g, p) <= optimum + 1e-9)
            ++hits;
        CHECK(partition_cost(g, p) >= optimum - 1e-9); // never below the optimum
    }
    // local search is a heuristic; it should still nail most tiny instances
    CHECK(hits >= total * 3 / 4);
}

TEST_CASE("round_solution before message passing equals rounding the input") {
    MulticutInstance g = test::triangle_instance();
    FactorGraph graph(g);
    RoundedSolution rounded = round_solution(graph);
    Partition direct = klj(g, costs_of(g), gaec(g, costs_of(g)));
    CHECK(rounded.cost == partition_cost(g, direct));
    CHECK(rounded.cost == -1.0);
    // the sweep without triangles leaves the edge costs untouched
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        CHECK(graph.edge_factors()[e].cost == g.edge(e).cost);
}

TEST_CASE("round_solution reports the exact cost of its labeling") {
    std::mt19937 rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        MulticutInstance g = test::random_instance(rng, 8);
        FactorGraph graph(g);
        for (const auto& cycle : separate_cycles(graph, 0.05))
            triangulate_cycle(graph, cycle);
        auto order = compute_factor_order(graph);
        for (int i = 0; i < 10; ++i)
            run_iteration(graph, order);
        RoundedSolution rounded = round_solution(graph);
        CHECK(is_multicut(graph.instance(), rounded.labeling));
        CHECK(rounded.cost == labeling_cost(graph.original_costs(), rounded.labeling));
    }
}

TEST_CASE("reparameterized costs satisfy the sign pattern on tight instances") {
    // After convergence on the triangle the optimum {0},{1,2} has cut edges
    // with nonpositive and uncut edges with nonnegative reparameterized cost.
    FactorGraph g(test::triangle_instance());
    for (const auto& cycle : separate_cycles(g, 1e-4))
        triangulate_cycle(g, cycle);
    auto order = compute_factor_order(g);
    for (int i = 0; i < 50; ++i)
        run_iteration(g, order);
    CHECK(g.dual_lower_bound() == doctest::Approx(-1.0));
    edge_receive_sweep(g);

    std::vector<double> theta;
    for (const auto& f : g.edge_factors())
        theta.push_back(f.cost);

    // search the oracle's optimal labelings for one matching the sign pattern
    ExactSolution best = exact_optimum(test::triangle_instance());
    PartitionEnumerator en(3);
    bool found = false;
    while (en.next() && !found) {
        Partition p = en.partition();
        if (partition_cost(test::triangle_instance(), p) > best.cost + 1e-12)
            continue;
        EdgeLabeling x = partition_to_labeling(test::triangle_instance(), p);
        bool matches = true;
        for (std::size_t e = 0; e < x.size(); ++e) {
            if (x[e] && theta[e] > 1e-6)
                matches = false;
            if (!x[e] && theta[e] < -1e-6)
                matches = false;
        }
        found = matches;
    }
    CHECK(found);
}
