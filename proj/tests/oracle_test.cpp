#include <doctest.h>

#include <algorithm>
#include <random>

#include "mcmp/oracle.hpp"
#include "test_support.hpp"

using namespace mcmp;

TEST_CASE("partition enumerator produces Bell numbers") {
    auto count = [](std::size_t n) {
        PartitionEnumerator en(n);
        std::size_t total = 0;
        while (en.next())
            ++total;
        return total;
    };
    CHECK(count(1) == 1);
    CHECK(count(2) == 2);
    CHECK(count(3) == 5);
    CHECK(count(4) == 15);
    CHECK(count(5) == 52);
    CHECK_THROWS_AS(PartitionEnumerator(13), std::invalid_argument);
}

TEST_CASE("exact_optimum on the triangle") {
    ExactSolution best = exact_optimum(test::triangle_instance());
    CHECK(best.cost == -1.0);
    // witness must realize the optimum
    CHECK(partition_cost(test::triangle_instance(), best.partition) == -1.0);
}

TEST_CASE("exact_optimum on the K4 wheel") {
    MulticutInstance g = test::k4_wheel_instance();
    ExactSolution best = exact_optimum(g);
    CHECK(best.cost == -1.0);
    CHECK(partition_cost(g, best.partition) == -1.0);
}

TEST_CASE("exact_optimum with all-positive costs is the single cluster") {
    MulticutInstance g = test::cycle_instance(5, 1.0);
    ExactSolution best = exact_optimum(g);
    CHECK(best.cost == 0.0);
    CHECK(best.partition.component_count == 1);
}

TEST_CASE("exact_optimum rejects oversized instances") {
    MulticutInstance g(13);
    CHECK_THROWS_AS(exact_optimum(g), std::invalid_argument);
}

TEST_CASE("exact_optimum lower-bounds every feasible labeling") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        MulticutInstance g = test::random_instance(rng, 7);
        double optimum = exact_optimum(g).cost;
        for (int s = 0; s < 20; ++s) {
            Partition p = test::random_partition(rng, g.node_count());
            CHECK(optimum <= partition_cost(g, p) + 1e-12);
        }
    }
}

TEST_CASE("exact_optimum is invariant under node relabeling") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        MulticutInstance g = test::random_instance(rng, 7);
        std::vector<std::size_t> perm(g.node_count());
        for (std::size_t v = 0; v < perm.size(); ++v)
            perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        MulticutInstance h(g.node_count());
        for (const auto& e : g.edges())
            h.add_edge(perm[e.u], perm[e.v], e.cost);
        CHECK(exact_optimum(g).cost == doctest::Approx(exact_optimum(h).cost).epsilon(1e-12));
    }
}

TEST_CASE("all_qualifying_cycles") {
    MulticutInstance tri = test::triangle_instance();
    std::vector<double> costs{-2.0, 1.0, 1.0};
    CHECK(all_qualifying_cycles(tri, costs, 1.0).size() == 1);

    std::vector<double> positive{2.0, 1.0, 1.0};
    CHECK(all_qualifying_cycles(tri, positive, 1.0).empty());

    // 4-cycle with costs (-1, .5, .5, .5)
    MulticutInstance quad(4);
    quad.add_edge(0, 1, -1.0);
    quad.add_edge(1, 2, 0.5);
    quad.add_edge(2, 3, 0.5);
    quad.add_edge(0, 3, 0.5);
    std::vector<double> qcosts{-1.0, 0.5, 0.5, 0.5};
    CHECK(all_qualifying_cycles(quad, qcosts, 0.6).empty()); // path edges below epsilon
    CHECK(all_qualifying_cycles(quad, qcosts, 0.5).size() == 1);
}

TEST_CASE("check_cycle_point") {
    MulticutInstance tri = test::triangle_instance();
    CHECK(check_cycle_point(tri, std::vector<double>{1.0, 1.0, 0.0}));
    CHECK_FALSE(check_cycle_point(tri, std::vector<double>{1.0, 0.0, 0.0}));
    CHECK_THROWS_AS(check_cycle_point(tri, std::vector<double>{1.5, 0.0, 0.0}),
                    std::invalid_argument);

    // K4 wheel: spokes 1/2, rim 1 is cycle-feasible with cost -1.5
    MulticutInstance k4 = test::k4_wheel_instance();
    std::vector<double> point(6);
    double cost = 0.0;
    for (std::size_t e = 0; e < 6; ++e) {
        point[e] = k4.edge(e).u == 0 ? 0.5 : 1.0;
        cost += point[e] * k4.edge(e).cost;
    }
    CHECK(check_cycle_point(k4, point));
    CHECK(cost == doctest::Approx(-1.5));
}

TEST_CASE("integral multicuts pass check_cycle_point") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        MulticutInstance g = test::random_instance(rng, 7);
        Partition p = test::random_partition(rng, g.node_count());
        EdgeLabeling x = partition_to_labeling(g, p);
        std::vector<double> point(x.begin(), x.end());
        CHECK(check_cycle_point(g, point));
    }
}
