#include <catch2/catch_amalgamated.hpp>

#include "qlattice/baselines.hpp"
#include "qlattice/generators.hpp"

#include <cmath>

using namespace qlattice;

namespace {

Problem three_item_example() {
    Problem p;
    p.kind = ProblemKind::custom;
    p.item_count = 3;
    p.solution_level = 2;
    p.start_level = 0;
    p.nogoods = {ItemSet::from_items({3})};
    return p;
}

Problem insoluble_sat3() {
    // all eight sign patterns over three variables
    auto p = generate_3sat(3, 0, 1).value();
    for (int signs = 0; signs < 8; ++signs)
        p.nogoods.push_back(clause_nogood(
            {1, 2, 3}, {(signs & 1) != 0, (signs & 2) != 0, (signs & 4) != 0}));
    p.clause_count = 8;
    return p;
}

} // namespace

TEST_CASE("backtrack trace on the 3-item example") {
    const auto stats = backtrack_cost(three_item_example());
    CHECK(stats.found_solution);
    CHECK(stats.solution == ItemSet::from_items({1, 2}));
    CHECK(stats.nodes_visited == 3);  // {}, {1}, {1,2}
    CHECK(stats.consistent_visited == 3);
}

TEST_CASE("backtrack-free search costs L+1 nodes") {
    const auto p = generate_unstructured(8, 0.0, 1);
    const auto stats = backtrack_cost(p);
    CHECK(stats.found_solution);
    CHECK(stats.nodes_visited == static_cast<std::uint64_t>(p.solution_level) + 1);
}

TEST_CASE("found_solution agrees with enumerate_solutions") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = generate_unstructured(10, 3.5, seed);
        CHECK(backtrack_cost(p).found_solution == !enumerate_solutions(p).empty());
    }
    const auto bad = insoluble_sat3();
    CHECK_FALSE(backtrack_cost(bad).found_solution);
    CHECK(enumerate_solutions(bad).empty());
}

TEST_CASE("node counts are deterministic and bounded below") {
    const auto p = generate_unstructured(12, 2.5, 33);
    const auto a = backtrack_cost(p);
    const auto b = backtrack_cost(p);
    CHECK(a.nodes_visited == b.nodes_visited);
    CHECK(a.consistent_visited <= a.nodes_visited);
    if (a.found_solution)
        CHECK(a.nodes_visited >= static_cast<std::uint64_t>(p.solution_level) + 1);
}

TEST_CASE("random_selection_p") {
    CHECK_THAT(random_selection_p(three_item_example()),
               Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
    CHECK(random_selection_p(generate_unstructured(8, 0.0, 1)) == 1.0);
    const auto sat = generate_3sat(5, 0, 2).value();
    CHECK_THAT(random_selection_p(sat),
               Catch::Matchers::WithinAbs(32.0 / 252.0, 1e-15));
}

TEST_CASE("random_assignment_p") {
    const auto empty = generate_3sat(5, 0, 2).value();
    CHECK(random_assignment_p(empty) == 1.0);

    auto one_clause = generate_3sat(3, 0, 1).value();
    one_clause.nogoods.push_back(clause_nogood({1, 2, 3}, {true, true, true}));
    one_clause.clause_count = 1;
    CHECK_THAT(random_assignment_p(one_clause),
               Catch::Matchers::WithinAbs(7.0 / 8.0, 1e-15));

    CHECK(random_assignment_p(insoluble_sat3()) == 0.0);
    CHECK_THROWS_AS(random_assignment_p(generate_unstructured(8, 1.0, 1)),
                    std::invalid_argument);
}

TEST_CASE("selection and assignment probabilities count the same solutions") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = generate_3sat_soluble(5, 15, seed).problem;
        const double lhs = random_assignment_p(p) * std::exp2(p.var_count);
        const double rhs = random_selection_p(p) *
                           static_cast<double>(binomial(p.item_count, p.solution_level));
        CHECK_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-9));
    }
}
