#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlattice/lattice.hpp"

namespace qlattice {

enum class ProblemKind { unstructured, sat3, custom };

inline std::string to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::unstructured: return "unstructured";
        case ProblemKind::sat3: return "sat3";
        case ProblemKind::custom: return "custom";
    }
    return "custom";
}

inline ProblemKind problem_kind_from_string(const std::string& s) {
    if (s == "unstructured") return ProblemKind::unstructured;
    if (s == "sat3") return ProblemKind::sat3;
    if (s == "custom") return ProblemKind::custom;
    throw std::invalid_argument("unknown problem kind: " + s);
}

/// A search instance over the subset lattice: N items, solutions are the
/// good sets at level L, the quantum search starts at level K. Consistency
/// is defined entirely by the directly specified nogoods: a set is nogood
/// iff it contains one of them.
///
/// Generated ensembles specify nogoods of size 2 (unstructured) or sizes
/// 2 and 3 (sat3); hand-built problems may use any size from 1 to L.
struct Problem {
    ProblemKind kind = ProblemKind::custom;
    int item_count = 0;      ///< N
    int solution_level = 0;  ///< L
    int start_level = 0;     ///< K
    std::vector<ItemSet> nogoods;
    int var_count = 0;       ///< sat3: number of variables n (N = 2n)
    int clause_count = 0;    ///< sat3: number of clauses c
    std::uint64_t seed = 0;  ///< generator seed; 0 for hand-built problems
};

inline void validate_problem(const Problem& p) {
    if (p.item_count < 1 || p.item_count > kMaxItems)
        throw std::invalid_argument("problem: N outside 1..32");
    const int ceil_half = (p.item_count + 1) / 2;
    if (p.solution_level < 1 || p.solution_level > ceil_half)
        throw std::invalid_argument("problem: requires 1 <= L <= ceil(N/2)");
    if (p.start_level < 0 || p.start_level > p.solution_level)
        throw std::invalid_argument("problem: requires 0 <= K <= L");
    for (ItemSet g : p.nogoods) {
        if (g.empty() || g.size() > p.solution_level)
            throw std::invalid_argument("problem: nogood size outside 1..L");
        if (g.bits() >> p.item_count)
            throw std::invalid_argument("problem: nogood member exceeds N");
    }
    if (p.kind == ProblemKind::sat3 && p.item_count != 2 * p.var_count)
        throw std::invalid_argument("problem: sat3 requires N = 2n");
}

/// True iff some specified nogood is contained in s. Supersets of nogoods
/// are therefore nogood as well.
inline bool is_nogood(const Problem& p, ItemSet s) {
    for (ItemSet g : p.nogoods)
        if (g.subset_of(s)) return true;
    return false;
}

namespace detail {

template <class Visit>
void extend_consistent(const Problem& p, ItemSet s, int max_item, Visit&& visit) {
    if (s.size() == p.solution_level) {
        visit(s);
        return;
    }
    for (int item = max_item + 1; item <= p.item_count; ++item) {
        const ItemSet next = s.with(item);
        if (!is_nogood(p, next))
            extend_consistent(p, next, item, visit);
    }
}

} // namespace detail

/// All good sets at level L, in increasing rank order, found by depth-first
/// consistent extension over increasing item index.
inline std::vector<ItemSet> enumerate_solutions(const Problem& p) {
    std::vector<ItemSet> out;
    if (!is_nogood(p, ItemSet{}))
        detail::extend_consistent(p, ItemSet{}, 0, [&](ItemSet s) { out.push_back(s); });
    return out;
}

/// Phase-transition estimates for the unstructured ensemble.
struct TheoryReport {
    double solution_probability = 0.0;  ///< chance a fixed complete set is good
    double expected_solutions = 0.0;
    double beta_critical = 0.0;         ///< predicted solubility transition
    double beta_poly = 0.0;             ///< end of the polynomial-cost regime
};

/// Entropy of a two-valued split.
inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

/// Exact finite-size solution probability for m uniformly chosen level-2
/// nogoods avoiding nothing, together with the large-N transition estimates
/// for solution size L = N/b.
inline TheoryReport theory(int N, int L, int m, double b) {
    if (N < 2 || N > kMaxItems) throw std::invalid_argument("theory: N outside 2..32");
    if (L < 1 || L > N) throw std::invalid_argument("theory: L outside 1..N");
    if (!(b > 1.0)) throw std::invalid_argument("theory: requires b > 1");
    const std::uint64_t pairs = binomial(N, 2);
    const std::uint64_t eligible = pairs - binomial(L, 2);
    if (m < 0 || static_cast<std::uint64_t>(m) > pairs)
        throw std::invalid_argument("theory: m exceeds the number of level-2 sets");

    TheoryReport r;
    // C(eligible, m) / C(pairs, m) as a stable product; binomials of
    // binomials overflow anything exact.
    if (static_cast<std::uint64_t>(m) > eligible) {
        r.solution_probability = 0.0;
    } else {
        double rho = 1.0;
        for (int t = 0; t < m; ++t)
            rho *= static_cast<double>(eligible - static_cast<std::uint64_t>(t)) /
                   static_cast<double>(pairs - static_cast<std::uint64_t>(t));
        r.solution_probability = rho;
    }
    r.expected_solutions =
        static_cast<double>(binomial(N, L)) * r.solution_probability;
    r.beta_critical = binary_entropy(1.0 / b) / -std::log1p(-1.0 / (b * b));
    r.beta_poly = (b * b - 1.0) / (2.0 * b) * std::log(b - 1.0);
    return r;
}

} // namespace qlattice
