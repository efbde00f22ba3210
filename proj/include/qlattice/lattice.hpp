#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlattice {

/// Largest supported ground-set size. Sets are membership bit-vectors in a
/// 32-bit word, so overlap is a single popcount.
inline constexpr int kMaxItems = 32;

/// Exact binomial coefficient C(n, k). Returns 0 for k < 0 or k > n.
/// Throws std::overflow_error instead of wrapping when the exact value does
/// not fit in 64 bits.
inline std::uint64_t binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (int t = 1; t <= k; ++t) {
        // result * (n-k+t) / t == C(n-k+t, t), so the division is exact.
        result = result * static_cast<unsigned>(n - k + t) / static_cast<unsigned>(t);
        if (result > ~std::uint64_t{0}) {
            throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                      std::to_string(k) + ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(result);
}

namespace detail {

// Pascal table for n <= kMaxItems; every entry fits comfortably in 64 bits.
constexpr auto make_choose_table() {
    std::array<std::array<std::uint64_t, kMaxItems + 1>, kMaxItems + 1> c{};
    for (int n = 0; n <= kMaxItems; ++n) {
        c[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
    return c;
}

inline constexpr auto kChoose = make_choose_table();

} // namespace detail

/// Table-backed C(n, k) for 0 <= n <= 32; 0 outside the valid k range.
constexpr std::uint64_t choose32(int n, int k) {
    if (k < 0 || k > n) return 0;
    return detail::kChoose[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

/// A subset of the items 1..N, stored as a membership bit-vector
/// (bit v-1 set <=> item v is a member). The set's size is the lattice level
/// it occupies.
class ItemSet {
  public:
    constexpr ItemSet() = default;

    static constexpr ItemSet from_bits(std::uint32_t bits) { return ItemSet{bits}; }

    static ItemSet from_items(std::initializer_list<int> items) {
        ItemSet s;
        for (int v : items) s = s.with(v);
        return s;
    }

    [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }

    [[nodiscard]] constexpr bool contains(int item) const {
        return ((bits_ >> (item - 1)) & 1u) != 0;
    }

    [[nodiscard]] constexpr ItemSet with(int item) const {
        check_item(item);
        return ItemSet{bits_ | (std::uint32_t{1} << (item - 1))};
    }

    [[nodiscard]] constexpr ItemSet without(int item) const {
        check_item(item);
        return ItemSet{bits_ & ~(std::uint32_t{1} << (item - 1))};
    }

    [[nodiscard]] constexpr bool subset_of(ItemSet o) const {
        return (bits_ & o.bits_) == bits_;
    }

    [[nodiscard]] constexpr ItemSet intersect(ItemSet o) const {
        return ItemSet{bits_ & o.bits_};
    }

    /// Members as a sorted list of item numbers 1..N.
    [[nodiscard]] std::vector<int> items() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int v : items()) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        return s + "}";
    }

    friend constexpr bool operator==(ItemSet a, ItemSet b) = default;
    friend constexpr auto operator<=>(ItemSet a, ItemSet b) = default;

  private:
    constexpr explicit ItemSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr void check_item(int item) {
        if (item < 1 || item > kMaxItems)
            throw std::out_of_range("item index outside 1..32");
    }

    std::uint32_t bits_ = 0;
};

/// |a n b|, the hot inner operation of amplitude propagation.
[[nodiscard]] constexpr int overlap(ItemSet a, ItemSet b) {
    return std::popcount(a.bits() & b.bits());
}

/// Position of a set within its level under the fixed colexicographic order
/// of membership bit-patterns (which coincides with numeric order of the
/// bit-patterns, so level enumeration is a same-popcount count-up).
struct LevelIndex {
    int level = 0;
    std::uint64_t rank = 0;

    friend constexpr bool operator==(const LevelIndex&, const LevelIndex&) = default;
};

/// Number of sets at level i of the lattice over N items: C(N, i).
inline std::uint64_t level_size(int N, int i) {
    if (N < 0 || N > kMaxItems) throw std::invalid_argument("level_size: N outside 0..32");
    if (i < 0 || i > N) throw std::invalid_argument("level_size: level outside 0..N");
    return choose32(N, i);
}

/// Colexicographic rank of s among all sets of the same size:
/// rank = sum_j C(p_j, j+1) over the 0-based member positions p_0 < p_1 < ...
[[nodiscard]] inline LevelIndex rank_set(ItemSet s) {
    std::uint64_t rank = 0;
    int j = 0;
    for (std::uint32_t b = s.bits(); b != 0; b &= b - 1, ++j)
        rank += choose32(std::countr_zero(b), j + 1);
    return LevelIndex{s.size(), rank};
}

/// Inverse of rank_set. Throws std::out_of_range if idx.rank is not a valid
/// rank at the given level of the N-item lattice.
[[nodiscard]] inline ItemSet unrank(LevelIndex idx, int N) {
    if (idx.rank >= level_size(N, idx.level))
        throw std::out_of_range("unrank: rank exceeds level size");
    std::uint64_t r = idx.rank;
    std::uint32_t bits = 0;
    for (int j = idx.level; j >= 1; --j) {
        int p = j - 1;
        while (choose32(p + 1, j) <= r) ++p;
        bits |= std::uint32_t{1} << p;
        r -= choose32(p, j);
    }
    return ItemSet::from_bits(bits);
}

namespace detail {

// Gosper's hack: next bit-pattern with the same popcount, in increasing
// numeric order (= colex rank order).
constexpr std::uint32_t next_same_popcount(std::uint32_t v) {
    std::uint32_t c = v & (0u - v);
    std::uint32_t r = v + c;
    return r | (((v ^ r) >> 2) / c);
}

} // namespace detail

/// All C(N, i) sets of size i, in rank order.
[[nodiscard]] inline std::vector<ItemSet> enumerate_level(int N, int i) {
    const std::uint64_t count = level_size(N, i);
    std::vector<ItemSet> out;
    out.reserve(count);
    if (i == 0) {
        out.push_back(ItemSet{});
        return out;
    }
    std::uint32_t v = (i == kMaxItems) ? ~std::uint32_t{0}
                                       : ((std::uint32_t{1} << i) - 1);
    for (std::uint64_t r = 0; r < count; ++r) {
        out.push_back(ItemSet::from_bits(v));
        if (r + 1 < count) v = detail::next_same_popcount(v);
    }
    return out;
}

/// Ranks of the size-1-smaller subsets s \ {p_m}, ordered by increasing
/// removed position. Writes size(s) entries to `out`; returns the count.
/// O(size) total via prefix/suffix sums of the combinadic terms.
inline int facet_ranks(ItemSet s, std::uint64_t* out) {
    const int k = s.size();
    std::array<int, kMaxItems> pos{};
    {
        int j = 0;
        for (std::uint32_t b = s.bits(); b != 0; b &= b - 1, ++j)
            pos[static_cast<std::size_t>(j)] = std::countr_zero(b);
    }
    // suffix[m] = sum_{j>m} C(pos[j], j): member j keeps weight j after the
    // removal of an earlier member shifts its combinadic index down by one.
    std::array<std::uint64_t, kMaxItems + 1> suffix{};
    suffix[static_cast<std::size_t>(k)] = 0;
    for (int m = k - 1; m >= 0; --m)
        suffix[static_cast<std::size_t>(m)] =
            suffix[static_cast<std::size_t>(m + 1)] +
            choose32(pos[static_cast<std::size_t>(m)], m);
    std::uint64_t prefix = 0;
    for (int m = 0; m < k; ++m) {
        out[m] = prefix + suffix[static_cast<std::size_t>(m + 1)];
        prefix += choose32(pos[static_cast<std::size_t>(m)], m + 1);
    }
    return k;
}

} // namespace qlattice
