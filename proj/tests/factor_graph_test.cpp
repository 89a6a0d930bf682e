#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "mcmp/factor_graph.hpp"
#include "mcmp/message_passing.hpp"
#include "mcmp/oracle.hpp"
#include "test_support.hpp"

using namespace mcmp;

namespace {

bool feasible_triangle_pattern(int a, int b, int c) {
    // feasible iff no edge is the only cut one of the 3-cycle
    return !((a == 1 && b + c == 0) || (b == 1 && a + c == 0) || (c == 1 && a + b == 0));
}

} // namespace

TEST_CASE("triangle state list is canonical") {
    auto states = triangle_states();
    REQUIRE(states.size() == 5);
    CHECK(states[0] == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(states[1] == std::array<std::uint8_t, 3>{0, 1, 1});
    CHECK(states[2] == std::array<std::uint8_t, 3>{1, 0, 1});
    CHECK(states[3] == std::array<std::uint8_t, 3>{1, 1, 0});
    CHECK(states[4] == std::array<std::uint8_t, 3>{1, 1, 1});

    // exactly the feasible 3-bit patterns, no single-cut pattern among them
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                CHECK((triangle_state_index(a, b, c) >= 0) == feasible_triangle_pattern(a, b, c));
    CHECK(triangle_state_index(1, 0, 0) == -1);
    CHECK(triangle_state_index(1, 1, 1) == 4);
}

TEST_CASE("attach_triangle on existing edges adds no chord") {
    FactorGraph g(test::triangle_instance());
    std::size_t before = g.instance().edge_count();
    std::size_t id = g.attach_triangle(0, 1, 2);
    CHECK(g.instance().edge_count() == before);
    CHECK(g.triangle_factors()[id].costs == std::array<double, 5>{0, 0, 0, 0, 0});
    for (std::size_t e : g.triangle_factors()[id].edge_ids)
        CHECK(g.edge_factors()[e].triangles == std::vector<std::size_t>{id});
}

TEST_CASE("attach_triangle appends missing chords with cost zero") {
    FactorGraph g(test::cycle_instance(4));
    CHECK(g.instance().edge_count() == 4);
    std::size_t id = g.attach_triangle(0, 1, 2);
    REQUIRE(g.instance().edge_count() == 5);
    std::size_t chord = *g.instance().find_edge(0, 2);
    CHECK(chord == 4); // appended at the end, earlier indices untouched
    CHECK(g.instance().edge(chord).cost == 0.0);
    CHECK(g.original_costs()[chord] == 0.0);
    CHECK(g.edge_factors()[chord].cost == 0.0);

    std::size_t again = g.attach_triangle(2, 0, 1);
    CHECK(again == id);
    CHECK(g.instance().edge_count() == 5);
    CHECK(g.triangle_factors().size() == 1);
}

TEST_CASE("attach_lollipop couples to every triangle sharing an edge") {
    // 5-wheel: center 0, rim 1..5
    FactorGraph g(test::wheel_instance(5));
    std::size_t t012 = g.attach_triangle(0, 1, 2);
    std::size_t t013 = g.attach_triangle(0, 1, 3);
    std::size_t lol = g.attach_lollipop(0, 2, 3, 1);

    // own triangle {0,2,3} is created on demand
    REQUIRE(g.find_triangle(0, 2, 3).has_value());
    std::size_t t023 = *g.find_triangle(0, 2, 3);

    std::vector<std::size_t> partners;
    std::vector<std::size_t> shared_counts;
    for (std::size_t ci : g.lollipop_factors()[lol].couplings) {
        partners.push_back(g.couplings()[ci].triangle);
        shared_counts.push_back(g.couplings()[ci].shared_count);
    }
    CHECK(partners == std::vector<std::size_t>{t012, t013, t023});
    // shared {01,02} with t012, {01,03} with t013, all 3 edges with its own triangle
    CHECK(shared_counts == std::vector<std::size_t>{2, 2, 3});

    CHECK(g.attach_lollipop(0, 2, 3, 1) == lol); // idempotent
    CHECK(g.lollipop_factors().size() == 1);
    CHECK(g.couplings().size() == 3);

    CHECK_THROWS_AS(g.attach_lollipop(0, 2, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.attach_lollipop(0, 2, 3, 0), std::invalid_argument);
}

TEST_CASE("marginal_min over triangle states") {
    FactorGraph g(test::triangle_instance());
    std::size_t id = g.attach_triangle(0, 1, 2);
    TriangleFactor& tri = g.triangle_factors()[id];
    tri.costs = {0, 2, -1, 3, 1};
    std::size_t e01 = *g.instance().find_edge(0, 1);

    CHECK(marginal_min(tri, std::vector<EdgeAssignment>{{e01, 1}}) == -1.0);
    CHECK(marginal_min(tri, std::vector<EdgeAssignment>{{e01, 0}}) == 0.0);
    CHECK(marginal_min(tri, std::vector<EdgeAssignment>{}) == -1.0);

    std::size_t e02 = *g.instance().find_edge(0, 2);
    std::size_t e12 = *g.instance().find_edge(1, 2);
    double inf = std::numeric_limits<double>::infinity();
    CHECK(marginal_min(tri, std::vector<EdgeAssignment>{{e01, 1}, {e02, 0}, {e12, 0}}) == inf);
    CHECK_THROWS_AS(marginal_min(tri, std::vector<EdgeAssignment>{{99, 1}}),
                    std::invalid_argument);
}

TEST_CASE("marginal_min over edge and lollipop factors") {
    FactorGraph g(test::wheel_instance(5));
    std::size_t e01 = *g.instance().find_edge(0, 1);
    EdgeFactor edge{e01, -2.5, {}};
    CHECK(marginal_min(edge, std::vector<EdgeAssignment>{}) == -2.5);
    CHECK(marginal_min(edge, std::vector<EdgeAssignment>{{e01, 0}}) == 0.0);
    CHECK(marginal_min(edge, std::vector<EdgeAssignment>{{e01, 1}}) == -2.5);

    std::size_t lol = g.attach_lollipop(0, 2, 3, 1);
    LollipopFactor& factor = g.lollipop_factors()[lol];
    for (std::size_t s = 0; s < 10; ++s)
        factor.costs[s] = static_cast<double>(s) - 4.0;
    std::size_t spoke = *g.instance().find_edge(0, 1);
    // spoke label 1 states are the odd indices
    CHECK(marginal_min(factor, std::vector<EdgeAssignment>{{spoke, 1}}) == -3.0);
    CHECK(marginal_min(factor, std::vector<EdgeAssignment>{{spoke, 0}}) == -4.0);
}

TEST_CASE("dual lower bound") {
    FactorGraph edges_only(test::triangle_instance());
    CHECK(edges_only.dual_lower_bound() == -2.0); // sum of min(0, theta)

    FactorGraph with_triangle(test::triangle_instance());
    with_triangle.attach_triangle(0, 1, 2);
    CHECK(with_triangle.dual_lower_bound() == -2.0); // zero tables change nothing

    // after message passing to convergence the bound is the optimum -1
    auto order = compute_factor_order(with_triangle);
    double lb = 0.0;
    for (int i = 0; i < 10; ++i)
        lb = run_iteration(with_triangle, order);
    CHECK(lb == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("coupling marginalization maps are one-hot indicators") {
    FactorGraph g(test::wheel_instance(5));
    g.attach_triangle(0, 1, 2);
    g.attach_triangle(0, 1, 3);
    g.attach_lollipop(0, 2, 3, 1);
    REQUIRE(!g.couplings().empty());
    for (const auto& c : g.couplings()) {
        REQUIRE(c.shared_count >= 1);
        REQUIRE(c.shared_count <= 3);
        std::size_t masks = std::size_t{1} << c.shared_count;
        // each state maps to exactly one shared assignment (a 01 indicator row)
        for (std::size_t t = 0; t < 5; ++t)
            CHECK(c.tri_mask[t] < masks);
        for (std::size_t s = 0; s < 10; ++s)
            CHECK(c.lol_mask[s] < masks);
        // and the maps agree with an independent restriction of the states
        const auto& tri = g.triangle_factors()[c.triangle];
        const auto& lol = g.lollipop_factors()[c.lollipop];
        std::vector<std::size_t> shared;
        for (std::size_t e : tri.edge_ids)
            for (std::size_t f : lol.edge_ids)
                if (e == f)
                    shared.push_back(e);
        std::sort(shared.begin(), shared.end());
        REQUIRE(shared.size() == c.shared_count);
        for (std::size_t t = 0; t < 5; ++t) {
            std::uint8_t mask = 0;
            for (std::size_t j = 0; j < shared.size(); ++j)
                for (std::size_t pos = 0; pos < 3; ++pos)
                    if (tri.edge_ids[pos] == shared[j])
                        mask |= static_cast<std::uint8_t>(triangle_states()[t][pos] << j);
            CHECK(mask == c.tri_mask[t]);
        }
        for (std::size_t s = 0; s < 10; ++s) {
            std::uint8_t mask = 0;
            for (std::size_t j = 0; j < shared.size(); ++j)
                for (std::size_t pos = 0; pos < 4; ++pos)
                    if (lol.edge_ids[pos] == shared[j])
                        mask |= static_cast<std::uint8_t>(lollipop_state_value(s, pos) << j);
            CHECK(mask == c.lol_mask[s]);
        }
    }
}

TEST_CASE("reparameterized cost equals original cost for feasible labelings") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        MulticutInstance instance = test::random_instance(rng, 8);
        FactorGraph g(instance);
        std::uniform_int_distribution<std::size_t> node(0, instance.node_count() - 1);
        for (int k = 0; k < 3; ++k) {
            std::size_t a = node(rng), b = node(rng), c = node(rng);
            if (a != b && b != c && a != c)
                g.attach_triangle(a, b, c);
        }
        if (instance.node_count() >= 4) {
            std::size_t a = 0, b = 1, c = 2, s = 3;
            g.attach_lollipop(a, b, c, s);
        }
        auto order = compute_factor_order(g);
        for (int i = 0; i < 5; ++i)
            run_iteration(g, order);
        for (int s = 0; s < 10; ++s) {
            Partition p = test::random_partition(rng, g.instance().node_count());
            EdgeLabeling x = partition_to_labeling(g.instance(), p);
            double original = labeling_cost(g.original_costs(), x);
            double reparam = g.reparameterized_cost(x);
            CHECK(reparam == doctest::Approx(original).epsilon(1e-9));
        }
    }
}

TEST_CASE("weak duality against the oracle") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        MulticutInstance instance = test::random_instance(rng, 8);
        FactorGraph g(instance);
        std::uniform_int_distribution<std::size_t> node(0, instance.node_count() - 1);
        for (int k = 0; k < 4; ++k) {
            std::size_t a = node(rng), b = node(rng), c = node(rng);
            if (a != b && b != c && a != c)
                g.attach_triangle(a, b, c);
        }
        auto order = compute_factor_order(g);
        double lb = g.dual_lower_bound();
        for (int i = 0; i < 20; ++i)
            lb = run_iteration(g, order);
        CHECK(lb <= exact_optimum(instance).cost + 1e-6);
    }
}
