#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qlattice/lattice.hpp"
#include "qlattice/problem.hpp"

namespace qlattice {

/// Outcome of a chronological backtrack search. nodes_visited counts every
/// set generated and consistency-tested, including the empty root and
/// pruned nogood sets; consistent_visited counts only the sets that passed
/// the test, for comparisons under the alternative node convention.
struct BacktrackStats {
    std::uint64_t nodes_visited = 0;
    std::uint64_t consistent_visited = 0;
    bool found_solution = false;
    std::optional<ItemSet> solution;
};

namespace detail {

inline bool backtrack_visit(const Problem& p, ItemSet s, int max_item,
                            BacktrackStats& stats) {
    ++stats.nodes_visited;
    if (is_nogood(p, s)) return false;
    ++stats.consistent_visited;
    if (s.size() == p.solution_level) {
        stats.found_solution = true;
        stats.solution = s;
        return true;
    }
    for (int item = max_item + 1; item <= p.item_count; ++item)
        if (backtrack_visit(p, s.with(item), item, stats)) return true;
    return false;
}

} // namespace detail

/// Depth-first chronological search from the empty set, extending only with
/// items above the current maximum, stopping at the first solution. A
/// backtrack-free run costs exactly L+1 nodes. Exhausting the tree doubles
/// as the solubility check.
inline BacktrackStats backtrack_cost(const Problem& p) {
    BacktrackStats stats;
    detail::backtrack_visit(p, ItemSet{}, 0, stats);
    return stats;
}

/// Probability that uniform selection among all complete sets hits a
/// solution: |solutions| / C(N, L).
inline double random_selection_p(const Problem& p) {
    return static_cast<double>(enumerate_solutions(p).size()) /
           static_cast<double>(binomial(p.item_count, p.solution_level));
}

/// Probability that a uniform complete assignment satisfies a sat3 problem:
/// |satisfying assignments| / 2^n. Every solution set picks exactly one item
/// per variable, so the numerator equals the solution count.
inline double random_assignment_p(const Problem& p) {
    if (p.kind != ProblemKind::sat3)
        throw std::invalid_argument("random_assignment_p: requires a sat3 problem");
    return static_cast<double>(enumerate_solutions(p).size()) /
           std::exp2(static_cast<double>(p.var_count));
}

} // namespace qlattice
