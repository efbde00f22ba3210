#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlattice/lattice.hpp"
#include "qlattice/rng.hpp"

namespace qlattice {

/// Coefficients a_0..a_i of the level-i -> i+1 map over N items: the matrix
/// entry for target r and source b is a_{|r n b|}, so the exponentially
/// large map is parameterized by i+1 values.
struct MapCoefficients {
    int N = 0;
    int level = 0;            ///< source level i
    std::vector<double> a;    ///< a[k] for overlap k, size level+1
};

/// n_k of the normalization equation: the number of (i+1)-sets r with
/// |r n b| = k for a fixed i-set b. Equals C(i,k) * C(N-i, i+1-k).
inline std::uint64_t overlap_count(int N, int i, int k) {
    return binomial(i, k) * binomial(N - i, i + 1 - k);
}

/// n_jk^(p) of the orthogonality equations: the number of (i+1)-sets r with
/// |r n a| = k and |r n b| = j for fixed i-sets a, b with |a n b| = p.
/// x counts the items r shares with both a and b.
inline std::uint64_t pair_overlap_count(int N, int i, int p, int j, int k) {
    std::uint64_t total = 0;
    for (int x = 0; x <= p; ++x) {
        total += binomial(i - p, k - x) * binomial(p, x) * binomial(i - p, j - x) *
                 binomial(N - 2 * i + p, i + 1 - j - k + x);
    }
    return total;
}

/// Residuals of the i+1 orthonormality equations at the given coefficients,
/// evaluated directly from the overlap counts. Entry 0 is the normalization
/// equation; entry p+1 the orthogonality equation for source overlap p.
inline std::vector<double> equation_residuals(const MapCoefficients& c) {
    const int i = c.level;
    std::vector<double> res(static_cast<std::size_t>(i) + 1, 0.0);
    double norm = -1.0;
    for (int k = 0; k <= i; ++k)
        norm += static_cast<double>(overlap_count(c.N, i, k)) * c.a[k] * c.a[k];
    res[0] = norm;
    for (int p = 0; p < i; ++p) {
        double dot = 0.0;
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k <= i; ++k)
                dot += static_cast<double>(pair_overlap_count(c.N, i, p, j, k)) *
                       c.a[j] * c.a[k];
        res[static_cast<std::size_t>(p) + 1] = dot;
    }
    return res;
}

inline double max_equation_residual(const MapCoefficients& c) {
    double worst = 0.0;
    for (double r : equation_residuals(c)) worst = std::max(worst, std::abs(r));
    return worst;
}

/// Coefficients of the normalized ideal superset map: all amplitude to the
/// N-i immediate supersets, a_i = 1/sqrt(N-i), every other a_k zero.
/// Satisfies the normalization equation but is not orthogonal for i >= 1.
inline MapCoefficients ideal_map_coefficients(int N, int i) {
    MapCoefficients c{N, i, std::vector<double>(static_cast<std::size_t>(i) + 1, 0.0)};
    c.a[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(static_cast<double>(N - i));
    return c;
}

/// Thrown when the coefficient solve fails to reach tolerance.
struct CoefficientSolveError : std::runtime_error {
    CoefficientSolveError(int N, int i, double residual_)
        : std::runtime_error("coefficient solve for N=" + std::to_string(N) +
                             " level=" + std::to_string(i) +
                             " stalled at residual " + std::to_string(residual_)),
          residual(residual_) {}
    double residual;
};

namespace detail {

struct CoefficientSystem {
    int N, i;
    std::vector<double> nk;                  // diagonal counts, size i+1
    std::vector<Eigen::MatrixXd> pair_form;  // symmetric Q_p, p = 0..i-1

    explicit CoefficientSystem(int N_, int i_) : N(N_), i(i_) {
        nk.resize(static_cast<std::size_t>(i) + 1);
        for (int k = 0; k <= i; ++k)
            nk[static_cast<std::size_t>(k)] = static_cast<double>(overlap_count(N, i, k));
        pair_form.reserve(static_cast<std::size_t>(i));
        for (int p = 0; p < i; ++p) {
            Eigen::MatrixXd q(i + 1, i + 1);
            for (int j = 0; j <= i; ++j)
                for (int k = 0; k <= i; ++k)
                    q(j, k) = static_cast<double>(pair_overlap_count(N, i, p, j, k));
            pair_form.push_back(std::move(q));
        }
    }

    Eigen::VectorXd equations(const Eigen::VectorXd& a) const {
        Eigen::VectorXd f(i + 1);
        double norm = -1.0;
        for (int k = 0; k <= i; ++k)
            norm += nk[static_cast<std::size_t>(k)] * a[k] * a[k];
        f[0] = norm;
        for (int p = 0; p < i; ++p)
            f[p + 1] = a.dot(pair_form[static_cast<std::size_t>(p)] * a);
        return f;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& a) const {
        Eigen::MatrixXd jac(i + 1, i + 1);
        for (int k = 0; k <= i; ++k)
            jac(0, k) = 2.0 * nk[static_cast<std::size_t>(k)] * a[k];
        for (int p = 0; p < i; ++p)
            jac.row(p + 1) = 2.0 * (pair_form[static_cast<std::size_t>(p)] * a).transpose();
        return jac;
    }

    /// Frobenius distance (per source set) to the 0/1 superset map.
    double ideal_distance(const Eigen::VectorXd& a) const {
        double d = nk[static_cast<std::size_t>(i)] * (a[i] - 1.0) * (a[i] - 1.0);
        for (int k = 0; k < i; ++k)
            d += nk[static_cast<std::size_t>(k)] * a[k] * a[k];
        return d;
    }
};

/// Damped Newton iteration, polished to the machine-precision floor so the
/// coefficient values themselves carry ~1e-15 accuracy; returns true when
/// the max equation residual ends at or below `tol`.
inline bool newton_solve(const CoefficientSystem& sys, Eigen::VectorXd& a,
                         double tol, int max_iter) {
    constexpr double kFloor = 1e-15;
    Eigen::VectorXd f = sys.equations(a);
    double res = f.cwiseAbs().maxCoeff();
    for (int iter = 0; iter < max_iter; ++iter) {
        if (res <= kFloor) return true;
        const Eigen::VectorXd step = sys.jacobian(a).colPivHouseholderQr().solve(-f);
        if (!step.allFinite()) return false;
        double lambda = 1.0;
        Eigen::VectorXd next;
        Eigen::VectorXd fn;
        double rn = res;
        for (int halving = 0; halving < 48; ++halving) {
            next = a + lambda * step;
            fn = sys.equations(next);
            rn = fn.cwiseAbs().maxCoeff();
            if (rn < res || !std::isfinite(rn)) break;
            lambda *= 0.5;
        }
        if (!(rn < res)) return res <= tol;  // stalled at the attainable floor
        a = std::move(next);
        f = std::move(fn);
        res = rn;
    }
    return res <= tol;
}

} // namespace detail

/// Solve the i+1 orthonormality equations for the level-i -> i+1 map and
/// return the real root closest (in Frobenius distance) to the ideal
/// superset map. Multi-start damped Newton; the primary start is the
/// normalized ideal map, which the true solution stays close to.
/// Requires i+1 <= N-i so the target level is at least as large.
inline MapCoefficients solve_coefficients(int N, int i) {
    if (N < 1 || N > kMaxItems) throw std::invalid_argument("solve_coefficients: N outside 1..32");
    if (i < 0 || i + 1 > N - i)
        throw std::invalid_argument("solve_coefficients: requires i+1 <= N-i");

    const detail::CoefficientSystem sys(N, i);
    constexpr double kTol = 1e-12;
    constexpr int kMaxIter = 200;

    std::vector<Eigen::VectorXd> starts;
    Eigen::VectorXd ideal = Eigen::VectorXd::Zero(i + 1);
    ideal[i] = 1.0 / std::sqrt(static_cast<double>(N - i));
    starts.push_back(ideal);

    // Sign-alternating start spreading weight evenly over overlap classes.
    Eigen::VectorXd alt(i + 1);
    for (int k = 0; k <= i; ++k) {
        const double mag = 1.0 / std::sqrt(static_cast<double>(i + 1) *
                                           sys.nk[static_cast<std::size_t>(k)]);
        alt[k] = ((i - k) % 2 == 0) ? mag : -mag;
    }
    starts.push_back(alt);

    // Deterministic jitters of the ideal start.
    for (int attempt = 0; attempt < 4; ++attempt) {
        rng::SplitMix64 gen(rng::mix64(static_cast<std::uint64_t>(N),
                                       static_cast<std::uint64_t>(i),
                                       static_cast<std::uint64_t>(attempt)));
        Eigen::VectorXd jittered = ideal;
        for (int k = 0; k <= i; ++k)
            jittered[k] += (gen.next_unit() - 0.5) /
                           std::sqrt(sys.nk[static_cast<std::size_t>(k)]);
        starts.push_back(jittered);
    }

    bool found = false;
    Eigen::VectorXd best;
    double best_distance = 0.0;
    double best_residual = std::numeric_limits<double>::infinity();
    for (Eigen::VectorXd a : starts) {
        if (!detail::newton_solve(sys, a, kTol, kMaxIter)) {
            best_residual = std::min(best_residual, sys.equations(a).cwiseAbs().maxCoeff());
            continue;
        }
        // -a solves the same quadratic system; let the distance pick the sign.
        for (const Eigen::VectorXd& root : {a, Eigen::VectorXd(-a)}) {
            const double d = sys.ideal_distance(root);
            if (!found || d < best_distance) {
                found = true;
                best = root;
                best_distance = d;
            }
        }
    }
    if (!found) throw CoefficientSolveError(N, i, best_residual);

    MapCoefficients out{N, i, std::vector<double>(static_cast<std::size_t>(i) + 1)};
    for (int k = 0; k <= i; ++k) out.a[static_cast<std::size_t>(k)] = best[k];
    return out;
}

/// Scaled values b_k = (-1)^k a_{i-k} sqrt(n_{i-k}); all positive for the
/// closest-to-ideal root, with b_0 near one.
inline std::vector<double> scaled_b(const MapCoefficients& c) {
    const int i = c.level;
    std::vector<double> b(static_cast<std::size_t>(i) + 1);
    for (int k = 0; k <= i; ++k) {
        const double nk = static_cast<double>(overlap_count(c.N, i, i - k));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        b[static_cast<std::size_t>(k)] = sign * c.a[static_cast<std::size_t>(i - k)] * std::sqrt(nk);
    }
    return b;
}

/// The level map materialized as a dense matrix: row order is the rank order
/// of level i+1, column order the rank order of level i.
struct DenseLevelMap {
    int N = 0;
    int level = 0;  ///< source level i
    Eigen::MatrixXd entries;
};

inline constexpr std::uint64_t kDenseLevelCap = 20000;

inline DenseLevelMap build_dense_map(const MapCoefficients& c) {
    const std::uint64_t rows = level_size(c.N, c.level + 1);
    const std::uint64_t cols = level_size(c.N, c.level);
    if (rows > kDenseLevelCap || cols > kDenseLevelCap)
        throw std::length_error("build_dense_map: level size exceeds dense cap");
    const auto targets = enumerate_level(c.N, c.level + 1);
    const auto sources = enumerate_level(c.N, c.level);
    DenseLevelMap map{c.N, c.level,
                      Eigen::MatrixXd(static_cast<Eigen::Index>(rows),
                                      static_cast<Eigen::Index>(cols))};
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t b = 0; b < cols; ++b)
            map.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) =
                c.a[static_cast<std::size_t>(overlap(targets[r], sources[b]))];
    return map;
}

/// Brute-force oracle: build the 0/1 superset matrix for level i -> i+1 and
/// return the closest matrix with orthonormal columns via the singular value
/// decomposition (the polar factor U V^T).
inline DenseLevelMap svd_closest_unitary(int N, int i) {
    const std::uint64_t rows = level_size(N, i + 1);
    const std::uint64_t cols = level_size(N, i);
    if (rows > kDenseLevelCap || cols > kDenseLevelCap)
        throw std::length_error("svd_closest_unitary: level size exceeds dense cap");
    if (cols > rows)
        throw std::invalid_argument("svd_closest_unitary: requires i+1 <= N-i");
    const auto targets = enumerate_level(N, i + 1);
    const auto sources = enumerate_level(N, i);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t r = 0; r < rows; ++r)
        for (std::uint64_t b = 0; b < cols; ++b)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) =
                sources[b].subset_of(targets[r]) ? 1.0 : 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 1e-9 * sv[0])
        throw std::runtime_error("svd_closest_unitary: superset matrix is rank deficient");
    return DenseLevelMap{N, i, svd.matrixU() * svd.matrixV().transpose()};
}

/// Memoized coefficient lookup; concurrent readers with single-writer
/// insertion behind a mutex. Map nodes are stable, so returned references
/// stay valid for the cache lifetime.
class CoefficientCache {
  public:
    const MapCoefficients& get(int N, int i) {
        const std::pair<int, int> key{N, i};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, solve_coefficients(N, i)).first;
        return it->second;
    }

    /// Solve every map a K..L run over N items will need.
    void warm(int N, int from_level, int to_level) {
        for (int i = from_level; i < to_level; ++i) get(N, i);
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, MapCoefficients> cache_;
};

} // namespace qlattice
