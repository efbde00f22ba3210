#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlattice/baselines.hpp"
#include "qlattice/lattice.hpp"
#include "qlattice/problem.hpp"
#include "qlattice/rng.hpp"

namespace qlattice {

/// Random binary nogoods with a prespecified solution. L = N/2 and the
/// protected solution is items {1..L}; the ensemble is exchangeable under
/// relabeling, so the choice is immaterial. m = round(beta*N) distinct pairs
/// are drawn uniformly from those not contained in the solution, making the
/// instance soluble by construction.
inline Problem generate_unstructured(int N, double beta, std::uint64_t seed) {
    if (N < 4 || N % 2 != 0 || N > kMaxItems)
        throw std::invalid_argument("generate_unstructured: N must be even, 4..32");
    if (beta < 0.0) throw std::invalid_argument("generate_unstructured: beta < 0");
    const int L = N / 2;
    const auto m = static_cast<std::size_t>(std::llround(beta * N));

    ItemSet solution;
    for (int v = 1; v <= L; ++v) solution = solution.with(v);

    std::vector<ItemSet> eligible;
    eligible.reserve(binomial(N, 2) - binomial(L, 2));
    for (ItemSet pair : enumerate_level(N, 2))
        if (!pair.subset_of(solution)) eligible.push_back(pair);
    if (m > eligible.size())
        throw std::invalid_argument("generate_unstructured: beta*N exceeds the " +
                                    std::to_string(eligible.size()) + " eligible pairs");

    rng::SplitMix64 gen(seed);
    rng::partial_shuffle(eligible, m, gen);
    eligible.resize(m);
    std::sort(eligible.begin(), eligible.end());

    Problem p;
    p.kind = ProblemKind::unstructured;
    p.item_count = N;
    p.solution_level = L;
    p.start_level = 2;
    p.nogoods = std::move(eligible);
    p.seed = seed;
    return p;
}

/// Item encoding for sat3 problems: item 2v-1 means variable v is true,
/// item 2v means it is false.
constexpr int sat_item(int var, bool value) { return value ? 2 * var - 1 : 2 * var; }

/// The unique size-3 nogood of a clause: the falsifying assignment of its
/// three literals. positive[t] tells whether the literal over vars[t] is the
/// plain variable (true) or its negation.
inline ItemSet clause_nogood(const std::array<int, 3>& vars,
                             const std::array<bool, 3>& positive) {
    ItemSet s;
    for (int t = 0; t < 3; ++t)
        s = s.with(sat_item(vars[static_cast<std::size_t>(t)],
                            !positive[static_cast<std::size_t>(t)]));
    return s;
}

/// Random 3SAT over n variables encoded as lattice nogoods: one necessary
/// pair per variable plus c distinct clause triples sampled uniformly.
/// Returns nullopt when the instance has no satisfying assignment; the
/// caller regenerates with the next seed.
inline std::optional<Problem> generate_3sat(int n, int c, std::uint64_t seed) {
    if (n < 3 || 2 * n > kMaxItems)
        throw std::invalid_argument("generate_3sat: n must be in 3..16");
    const std::uint64_t max_clauses = binomial(n, 3) * 8;
    if (c < 0 || static_cast<std::uint64_t>(c) > max_clauses)
        throw std::invalid_argument("generate_3sat: c outside 0.." +
                                    std::to_string(max_clauses));

    Problem p;
    p.kind = ProblemKind::sat3;
    p.item_count = 2 * n;
    p.solution_level = n;
    p.start_level = 3;
    p.var_count = n;
    p.clause_count = c;
    p.seed = seed;

    for (int v = 1; v <= n; ++v)
        p.nogoods.push_back(ItemSet::from_items({sat_item(v, true), sat_item(v, false)}));

    std::vector<ItemSet> pool;
    pool.reserve(max_clauses);
    for (int v1 = 1; v1 <= n; ++v1)
        for (int v2 = v1 + 1; v2 <= n; ++v2)
            for (int v3 = v2 + 1; v3 <= n; ++v3)
                for (int signs = 0; signs < 8; ++signs)
                    pool.push_back(clause_nogood(
                        {v1, v2, v3},
                        {(signs & 1) != 0, (signs & 2) != 0, (signs & 4) != 0}));

    rng::SplitMix64 gen(seed);
    rng::partial_shuffle(pool, static_cast<std::size_t>(c), gen);
    pool.resize(static_cast<std::size_t>(c));
    std::sort(pool.begin(), pool.end());
    p.nogoods.insert(p.nogoods.end(), pool.begin(), pool.end());

    if (!backtrack_cost(p).found_solution) return std::nullopt;
    return p;
}

struct Sat3Sample {
    Problem problem;
    int rejected = 0;  ///< insoluble draws discarded before this instance
};

/// Draw sat3 instances until a soluble one appears, stepping through seeds
/// derived from (seed, attempt).
inline Sat3Sample generate_3sat_soluble(int n, int c, std::uint64_t seed,
                                        int max_attempts = 10000) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto p = generate_3sat(n, c, rng::mix64(seed, static_cast<std::uint64_t>(attempt)));
        if (p) return Sat3Sample{std::move(*p), attempt};
    }
    throw std::runtime_error("generate_3sat_soluble: no soluble instance in " +
                             std::to_string(max_attempts) + " attempts (n=" +
                             std::to_string(n) + ", c=" + std::to_string(c) + ")");
}

} // namespace qlattice
